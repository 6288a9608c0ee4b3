#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sumrank/exact.hpp"
#include "sumrank/oracle.hpp"

namespace sumrank::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerifyFailed = 1,
  kUsageError = 2,
  kBudgetExhausted = 3,
};

enum class Format { plain, csv, json };

struct RunConfig {
  std::string command;
  // One value each, except for `table`, which sweeps the cartesian product.
  std::vector<unsigned> q, m, eta, ell;
  std::optional<std::int64_t> rho;
  std::optional<std::int64_t> rho_max;
  Format format = Format::plain;
  SearchBudget budget;
  std::uint64_t seed = 0;
};

// Replaceable pieces for harness self-tests.
struct Hooks {
  std::function<ExactInt(std::int64_t t, std::int64_t ell, std::int64_t mu)> composition_count;
};

// Budget defaults come from SUMRANK_BUDGET_SPACE / SUMRANK_BUDGET_SECS when
// set; flags override them.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Hooks& hooks = {});

int cmd_volumes(const RunConfig& config, std::ostream& out);
int cmd_bounds(const RunConfig& config, std::ostream& out);
int cmd_table(const RunConfig& config, std::ostream& out);
int cmd_verify(const RunConfig& config, std::ostream& out, const Hooks& hooks = {});

// Column names of the table CSV, in order.
std::vector<std::string> table_columns();

}  // namespace sumrank::cli

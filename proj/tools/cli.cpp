#include "sumrank/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "sumrank/bounds.hpp"
#include "sumrank/errors.hpp"
#include "sumrank/geometry.hpp"
#include "sumrank/params.hpp"

namespace sumrank::cli {

namespace {

using nlohmann::ordered_json;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

ordered_json params_json(const CodeParams& p) {
  return {{"q", p.q()}, {"m", p.m()}, {"eta", p.eta()}, {"ell", p.ell()}, {"n", p.n()}};
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (const char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << csv_field(fields[i]);
  }
  out << '\n';
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string result;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) result += sep;
    result += parts[i];
  }
  return result;
}

std::string gap_ratio(const BoundReport& report) {
  return Rational(report.best_upper, report.best_lower).str();
}

CodeParams single_params(const RunConfig& config) {
  auto one = [](const std::vector<unsigned>& values, const char* flag) {
    if (values.size() != 1) throw UsageError(std::string("--") + flag + " takes exactly one value here");
    return values.front();
  };
  try {
    return CodeParams(one(config.q, "q"), one(config.m, "m"), one(config.eta, "eta"), one(config.ell, "ell"));
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// Inclusive radius range, either from the flags or [lo, hi] by default.
std::pair<std::int64_t, std::int64_t> rho_range(const RunConfig& config, std::int64_t lo, std::int64_t hi) {
  if (!config.rho) {
    if (config.rho_max) throw UsageError("--rho-max needs --rho");
    return {lo, hi};
  }
  const std::int64_t first = *config.rho;
  const std::int64_t last = config.rho_max.value_or(first);
  if (first < 0) throw UsageError("--rho must be nonnegative");
  if (last < first) throw UsageError("--rho-max must be at least --rho");
  return {first, last};
}

ReportOptions report_options(const RunConfig& config) {
  ReportOptions options;
  options.intersection_cap = config.budget.max_space_size;
  return options;
}

constexpr std::uint64_t kTableWorkBudget = 300000000;

template <typename T>
std::optional<T> env_value(const char* name) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  std::istringstream in(raw);
  T value{};
  if (!(in >> value) || !in.eof()) throw UsageError(std::string(name) + " is not a valid number");
  return value;
}

std::uint64_t table_work_budget() {
  return env_value<std::uint64_t>("SUMRANK_BUDGET_WORK").value_or(kTableWorkBudget);
}

}  // namespace

// volumes ----------------------------------------------------------------

int cmd_volumes(const RunConfig& config, std::ostream& out) {
  const CodeParams p = single_params(config);
  const auto spheres = sphere_volumes(p);
  std::vector<ExactInt> balls;
  ExactInt running = 0;
  for (const auto& s : spheres) balls.push_back(running += s);

  switch (config.format) {
    case Format::csv:
      out << "t,sphere,ball\n";
      for (std::size_t t = 0; t < spheres.size(); ++t) {
        write_csv_row(out, {std::to_string(t), spheres[t].str(), balls[t].str()});
      }
      break;
    case Format::json: {
      ordered_json doc = {{"params", params_json(p)}, {"rows", ordered_json::array()}};
      for (std::size_t t = 0; t < spheres.size(); ++t) {
        doc["rows"].push_back({{"t", t}, {"sphere", spheres[t].str()}, {"ball", balls[t].str()}});
      }
      out << doc.dump() << '\n';
      break;
    }
    case Format::plain: {
      const std::size_t width = std::max<std::size_t>(6, balls.back().str().size());
      out << p.to_string() << " n=" << p.n() << " mu=" << p.mu() << '\n';
      out << std::setw(4) << "t" << "  " << std::setw(width) << "sphere" << "  " << std::setw(width) << "ball"
          << '\n';
      for (std::size_t t = 0; t < spheres.size(); ++t) {
        out << std::setw(4) << t << "  " << std::setw(width) << spheres[t].str() << "  " << std::setw(width)
            << balls[t].str() << '\n';
      }
      break;
    }
  }
  return kSuccess;
}

// bounds -----------------------------------------------------------------

namespace {

ordered_json report_json(const BoundReport& report) {
  ordered_json doc = {{"params", params_json(report.params)}, {"rho", report.rho}};
  ordered_json bounds = ordered_json::array();
  for (const auto& b : report.bounds) {
    bounds.push_back({{"name", b.name},
                      {"kind", to_string(b.kind)},
                      {"applicable", b.applicable},
                      {"value", b.value ? ordered_json(b.value->str()) : ordered_json(nullptr)},
                      {"informational", b.informational},
                      {"assumptions", b.assumptions}});
  }
  doc["bounds"] = std::move(bounds);
  doc["best_lower"] = report.best_lower.str();
  doc["best_upper"] = report.best_upper.str();
  doc["best_lower_from"] = report.best_lower_names;
  doc["best_upper_from"] = report.best_upper_names;
  doc["gap_ratio"] = gap_ratio(report);
  return doc;
}

const std::vector<std::string> kBoundsCsvHeader = {"q",    "m",          "eta",           "ell",
                                                   "rho",  "name",       "kind",          "applicable",
                                                   "value", "informational", "assumptions"};

void report_csv(std::ostream& out, const BoundReport& report) {
  const CodeParams& p = report.params;
  const std::vector<std::string> prefix = {std::to_string(p.q()), std::to_string(p.m()), std::to_string(p.eta()),
                                           std::to_string(p.ell()), std::to_string(report.rho)};
  auto row = [&](std::vector<std::string> rest) {
    std::vector<std::string> fields = prefix;
    fields.insert(fields.end(), rest.begin(), rest.end());
    write_csv_row(out, fields);
  };
  for (const auto& b : report.bounds) {
    row({b.name, to_string(b.kind), b.applicable ? "true" : "false", b.value ? b.value->str() : "",
         b.informational ? "true" : "false", join(b.assumptions, "; ")});
  }
  row({"best_lower", "best", "true", report.best_lower.str(), "false", join(report.best_lower_names, "; ")});
  row({"best_upper", "best", "true", report.best_upper.str(), "false", join(report.best_upper_names, "; ")});
}

void report_plain(std::ostream& out, const BoundReport& report) {
  out << report.params.to_string() << " n=" << report.params.n() << " mu=" << report.params.mu()
      << " rho=" << report.rho << '\n';
  std::size_t width = 0;
  for (const auto& b : report.bounds) width = std::max(width, b.name.size());
  for (const auto& b : report.bounds) {
    out << "  " << std::left << std::setw(width) << b.name << std::right << "  " << std::setw(5)
        << to_string(b.kind) << "  ";
    if (b.value) {
      out << b.value->str();
    } else {
      out << "n/a";
    }
    if (b.informational) out << "  (informational)";
    if (!b.applicable && !b.assumptions.empty()) out << "  (" << b.assumptions.back() << ')';
    out << '\n';
  }
  out << "  bracket: " << report.best_lower << " <= K <= " << report.best_upper << "  gap " << gap_ratio(report)
      << '\n';
}

}  // namespace

int cmd_bounds(const RunConfig& config, std::ostream& out) {
  const CodeParams p = single_params(config);
  if (!config.rho) throw UsageError("bounds needs --rho");
  const auto [first, last] = rho_range(config, 0, 0);
  const std::int64_t top = p.max_weight();
  if (last > top) throw UsageError("rho must lie in [0, mu*ell] = [0, " + std::to_string(top) + "]");

  std::vector<BoundReport> reports;
  for (std::int64_t rho = first; rho <= last; ++rho) reports.push_back(compile_report(p, rho, report_options(config)));

  if (config.format == Format::csv) write_csv_row(out, kBoundsCsvHeader);
  for (const auto& report : reports) {
    switch (config.format) {
      case Format::csv:
        report_csv(out, report);
        break;
      case Format::json:
        out << report_json(report).dump() << '\n';
        break;
      case Format::plain:
        report_plain(out, report);
        break;
    }
  }
  return kSuccess;
}

// table ------------------------------------------------------------------

std::vector<std::string> table_columns() {
  std::vector<std::string> columns = {"q", "m", "eta", "ell", "n", "rho"};
  for (const auto& name : report_bound_names()) columns.push_back(name);
  columns.insert(columns.end(), {"greedy_code", "exact", "best_lower", "best_upper", "gap_ratio"});
  return columns;
}

int cmd_table(const RunConfig& config, std::ostream& out) {
  // Validate the whole grid before writing anything.
  std::vector<CodeParams> grid;
  for (const auto q : config.q) {
    for (const auto m : config.m) {
      for (const auto eta : config.eta) {
        for (const auto ell : config.ell) {
          try {
            grid.emplace_back(q, m, eta, ell);
          } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
          }
        }
      }
    }
  }
  if (config.rho_max && !config.rho) throw UsageError("--rho-max needs --rho");
  if (config.rho && *config.rho < 0) throw UsageError("--rho must be nonnegative");
  if (config.rho && config.rho_max && *config.rho_max < *config.rho) {
    throw UsageError("--rho-max must be at least --rho");
  }

  const auto columns = table_columns();
  std::vector<std::vector<std::optional<std::string>>> rows;
  for (const auto& p : grid) {
    const std::int64_t top = p.max_weight();
    auto [first, last] = rho_range(config, 1, top - 1);
    last = std::min(last, top);
    for (std::int64_t rho = first; rho <= last; ++rho) {
      const BoundReport report = compile_report(p, rho, report_options(config));
      std::map<std::string, std::string> values;
      for (const auto& b : report.bounds) {
        if (b.value) values[b.name] = b.value->str();
      }
      std::vector<std::optional<std::string>> row = {std::to_string(p.q()),   std::to_string(p.m()),
                                                     std::to_string(p.eta()), std::to_string(p.ell()),
                                                     std::to_string(p.n()),   std::to_string(rho)};
      for (const auto& name : report_bound_names()) {
        const auto it = values.find(name);
        row.push_back(it == values.end() ? std::nullopt : std::optional(it->second));
      }
      // Oracle columns, for spaces within the enumeration budget. The exact
      // search is capped by nodes so that the table is reproducible.
      ExactInt lower = report.best_lower;
      ExactInt upper = report.best_upper;
      std::optional<std::string> greedy;
      std::optional<std::string> exact;
      if (p.space_size() <= config.budget.max_space_size && rho > 0 && rho < top) {
        SearchBudget budget = config.budget;
        budget.max_work = table_work_budget();
        const auto code = greedy_min_covering(p, rho, budget);
        greedy = code.size.str();
        upper = std::min(upper, code.size);
        try {
          const auto result = exhaustive_min_covering(p, rho, budget);
          exact = result.size.str();
          lower = std::max(lower, result.size);
          upper = std::min(upper, result.size);
        } catch (const BudgetExceeded&) {
        }
      }
      row.push_back(greedy);
      row.push_back(exact);
      row.push_back(lower.str());
      row.push_back(upper.str());
      row.push_back(Rational(upper, lower).str());
      rows.push_back(std::move(row));
    }
  }

  switch (config.format) {
    case Format::csv:
    case Format::plain: {
      const std::string sep = config.format == Format::csv ? "," : " ";
      std::vector<std::string> fields = columns;
      write_csv_row(out, fields);
      for (const auto& row : rows) {
        fields.clear();
        for (const auto& v : row) fields.push_back(v.value_or(config.format == Format::csv ? "" : "-"));
        if (config.format == Format::csv) {
          write_csv_row(out, fields);
        } else {
          out << join(fields, sep) << '\n';
        }
      }
      break;
    }
    case Format::json: {
      ordered_json doc = {{"columns", columns}, {"rows", ordered_json::array()}};
      for (const auto& row : rows) {
        ordered_json object;
        for (std::size_t i = 0; i < columns.size(); ++i) {
          if (i < 6) {
            object[columns[i]] = std::stoll(*row[i]);
          } else {
            object[columns[i]] = row[i] ? ordered_json(*row[i]) : ordered_json(nullptr);
          }
        }
        doc["rows"].push_back(std::move(object));
      }
      out << doc.dump() << '\n';
      break;
    }
  }
  return kSuccess;
}

// verify -----------------------------------------------------------------

namespace {

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
};

class Verifier {
public:
  Verifier(const RunConfig& config, const CodeParams& params, const Hooks& hooks)
      : config_(config), params_(params), hooks_(hooks), rng_(config.seed),
        space_(params, config.budget.max_space_size) {}

  std::vector<Check> run(std::int64_t rho_first, std::int64_t rho_last) {
    volumes();
    compositions();
    matrix_ranks();
    metric_axioms();
    intersections();
    for (std::int64_t rho = rho_first; rho <= rho_last; ++rho) coverings(rho);
    return checks_;
  }

  const std::vector<Check>& checks() const { return checks_; }

private:
  Check& check(const std::string& name) {
    for (auto& c : checks_) {
      if (c.name == name) return c;
    }
    checks_.push_back({name, true, {}});
    return checks_.back();
  }

  void fail(const std::string& name, const std::string& detail) {
    Check& c = check(name);
    if (c.passed) c.detail = detail;
    c.passed = false;
  }

  void volumes() {
    check("sphere_volumes");
    const auto formula = sphere_volumes(params_);
    const auto brute = brute_weight_distribution(params_, config_.budget.max_space_size);
    for (std::size_t t = 0; t < brute.size(); ++t) {
      if (formula[t] != brute[t]) {
        fail("sphere_volumes", "t=" + std::to_string(t) + " formula " + formula[t].str() + " enumeration " +
                                   brute[t].str());
      }
    }
    check("ball_volume_total");
    if (ball_volume(params_, params_.max_weight()) != params_.space_size()) {
      fail("ball_volume_total", "Vol_B(mu*ell) differs from q^{mn}");
    }
  }

  void compositions() {
    check("composition_count");
    const auto count = hooks_.composition_count
                           ? hooks_.composition_count
                           : [](std::int64_t t, std::int64_t l, std::int64_t mu) {
                               return count_bounded_compositions(t, l, mu);
                             };
    const std::int64_t ell = params_.ell();
    const std::int64_t mu = params_.mu();
    for (std::int64_t t = 0; t <= mu * ell; ++t) {
      std::uint64_t enumerated = 0;
      for ([[maybe_unused]] const auto& c : BoundedCompositions(t, ell, mu)) ++enumerated;
      const ExactInt counted = count(t, ell, mu);
      if (counted != enumerated) {
        fail("composition_count", "t=" + std::to_string(t) + " ell=" + std::to_string(ell) + " mu=" +
                                      std::to_string(mu) + " formula " + counted.str() + " enumeration " +
                                      std::to_string(enumerated));
      }
    }
  }

  void matrix_ranks() {
    check("matrix_rank_counts");
    const BlockTables& blocks = space_.blocks();
    std::vector<std::uint64_t> histogram(params_.mu() + 1, 0);
    for (std::uint64_t b = 0; b < blocks.size(); ++b) ++histogram[blocks.rank(b)];
    for (unsigned t = 0; t <= params_.mu(); ++t) {
      const ExactInt formula = num_matrices_of_rank(params_.m(), params_.eta(), t, params_.q());
      if (formula != histogram[t]) {
        fail("matrix_rank_counts", "rank " + std::to_string(t) + " formula " + formula.str() + " enumeration " +
                                       std::to_string(histogram[t]));
      }
    }
  }

  void metric_axioms() {
    check("metric_axioms");
    std::uniform_int_distribution<std::uint64_t> pick(0, space_.size() - 1);
    for (int trial = 0; trial < kMetricSamples; ++trial) {
      const std::uint64_t x = pick(rng_);
      const std::uint64_t y = pick(rng_);
      const std::uint64_t z = pick(rng_);
      const unsigned dxy = space_.distance(x, y);
      if (dxy != space_.distance(y, x)) fail("metric_axioms", "asymmetric distance");
      if ((dxy == 0) != (x == y)) fail("metric_axioms", "distance zero between distinct vectors");
      if (space_.distance(x, z) > dxy + space_.distance(y, z)) fail("metric_axioms", "triangle inequality");
      if (space_.weight(x) != sum_rank_weight(space_.field(), space_.to_block_vector(x))) {
        fail("metric_axioms", "table weight differs from direct rank computation");
      }
    }
  }

  // One seeded random distribution per (tau, delta).
  void intersections() {
    check("intersection_volumes");
    const std::int64_t top = params_.max_weight();
    for (std::int64_t tau = 1; tau < top; ++tau) {
      for (std::int64_t delta = 1; delta <= std::min(top, 2 * tau); ++delta) {
        std::vector<WeightDistribution> all;
        for (const auto& c : BoundedCompositions(delta, params_.ell(), params_.mu())) all.push_back(c);
        std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
        const WeightDistribution& dist = all[pick(rng_)];
        const ExactInt formula = intersection_volume(params_, tau, dist, config_.budget.max_space_size);
        const ExactInt brute = brute_intersection_volume(params_, tau, dist, config_.budget.max_space_size);
        if (formula != brute) {
          fail("intersection_volumes", "tau=" + std::to_string(tau) + " delta=" + std::to_string(delta) +
                                           " formula " + formula.str() + " enumeration " + brute.str());
        }
      }
    }
  }

  ExactInt exact_k(const CodeParams& p, std::int64_t rho, std::uint64_t max_work) {
    SearchBudget budget = config_.budget;
    budget.max_work = max_work;
    return exhaustive_min_covering(p, rho, budget).size;
  }

  void coverings(std::int64_t rho) {
    check("covering_bracket");
    check("covering_witness");
    const auto result = exhaustive_min_covering(params_, rho, config_.budget);
    const BoundReport report = compile_report(params_, rho, report_options(config_));
    const std::string at = "rho=" + std::to_string(rho) + ": ";
    if (report.best_lower > result.size || result.size > report.best_upper) {
      fail("covering_bracket", at + "K=" + result.size.str() + " outside [" + report.best_lower.str() + ", " +
                                   report.best_upper.str() + "]");
    }
    if (static_cast<std::int64_t>(covering_radius(result.witness, config_.budget)) > rho) {
      fail("covering_witness", at + "witness does not cover");
    }
    const std::int64_t top = params_.max_weight();
    if (rho <= 0 || rho >= top) return;

    check("radius_relation");
    const unsigned r1 = covering_radius(result.witness, 1, config_.budget);
    const unsigned rl = covering_radius(result.witness, params_.ell(), config_.budget);
    const unsigned rn = covering_radius(result.witness, params_.n(), config_.budget);
    if (!(r1 <= rl && rl <= rn)) {
      fail("radius_relation", at + "radii " + std::to_string(r1) + ", " + std::to_string(rl) + ", " +
                                  std::to_string(rn) + " not nondecreasing in the block count");
    }

    // The regrouped searches can be far harder than the native one; the
    // relation is only checked where both finish within a work budget.
    check("metric_relation");
    ExactInt k_rank;
    ExactInt k_hamming;
    try {
      k_rank = exact_k(params_.reshaped(1), rho, kRelationWorkBudget);
      k_hamming = exact_k(params_.reshaped(params_.n()), rho, kRelationWorkBudget);
    } catch (const BudgetExceeded&) {
      Check& c = check("metric_relation");
      if (c.passed) c.detail += (c.detail.empty() ? "skipped " : ", ") + std::string("rho=") + std::to_string(rho);
      return;
    }
    if (!(k_rank <= result.size && result.size <= k_hamming)) {
      fail("metric_relation", at + "K_rank=" + k_rank.str() + " K=" + result.size.str() +
                                  " K_hamming=" + k_hamming.str());
    }
  }

  static constexpr int kMetricSamples = 2000;
  static constexpr std::uint64_t kRelationWorkBudget = 12000000000;

  const RunConfig& config_;
  CodeParams params_;
  const Hooks& hooks_;
  std::mt19937_64 rng_;
  SumRankSpace space_;
  std::vector<Check> checks_;
};

}  // namespace

int cmd_verify(const RunConfig& config, std::ostream& out, const Hooks& hooks) {
  const CodeParams p = single_params(config);
  const std::int64_t top = p.max_weight();
  const auto [first, last] = rho_range(config, 1, top - 1);
  if (last > top) throw UsageError("rho must lie in [0, mu*ell] = [0, " + std::to_string(top) + "]");
  if (p.space_size() > config.budget.max_space_size) {
    throw BudgetExceeded("verify: space of " + p.space_size().str() + " vectors exceeds budget " +
                         std::to_string(config.budget.max_space_size));
  }

  std::optional<Verifier> verifier;
  verifier.emplace(config, p, hooks);
  std::string budget_message;
  try {
    verifier->run(first, last);
  } catch (const BudgetExceeded& e) {
    budget_message = e.what();
  }
  const auto& checks = verifier->checks();
  std::vector<std::string> failures;
  for (const auto& c : checks) {
    if (!c.passed) failures.push_back(c.name);
  }
  const bool exhausted = !budget_message.empty();

  switch (config.format) {
    case Format::json: {
      ordered_json doc = {{"params", params_json(p)}, {"seed", config.seed}, {"checks", ordered_json::array()}};
      for (const auto& c : checks) {
        doc["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
      }
      doc["failures"] = failures;
      doc["budget_exhausted"] = exhausted ? ordered_json(budget_message) : ordered_json(nullptr);
      doc["passed"] = failures.empty() && !exhausted;
      out << doc.dump() << '\n';
      break;
    }
    case Format::csv:
      out << "check,passed,detail\n";
      for (const auto& c : checks) write_csv_row(out, {c.name, c.passed ? "true" : "false", c.detail});
      if (exhausted) write_csv_row(out, {"budget", "false", budget_message});
      break;
    case Format::plain:
      out << p.to_string() << " seed=" << config.seed << '\n';
      for (const auto& c : checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty()) out << ": " << c.detail;
        out << '\n';
      }
      if (exhausted) out << "BUDGET " << budget_message << '\n';
      out << (failures.empty() ? (exhausted ? "incomplete" : "all checks passed")
                               : std::to_string(failures.size()) + " check(s) failed")
          << '\n';
      break;
  }
  if (!failures.empty()) return kVerifyFailed;
  return exhausted ? kBudgetExhausted : kSuccess;
}

// entry point ------------------------------------------------------------

namespace {

void add_common_options(CLI::App* sub, RunConfig& config, std::string& format) {
  sub->add_option("--q", config.q, "Base field size (prime power)")->delimiter(',');
  sub->add_option("--m", config.m, "Extension degree")->delimiter(',');
  sub->add_option("--eta", config.eta, "Block length")->delimiter(',');
  sub->add_option("--ell", config.ell, "Number of blocks")->delimiter(',');
  sub->add_option("--rho", config.rho, "Covering radius (start of range)");
  sub->add_option("--rho-max", config.rho_max, "End of the radius range, inclusive");
  sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"plain", "csv", "json"}));
  sub->add_option("--budget-space", config.budget.max_space_size, "Largest space to enumerate");
  sub->add_option("--budget-secs", config.budget.time_cap_seconds, "Time cap for exhaustive searches");
  sub->add_option("--seed", config.seed, "Seed for sampled checks");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks) {
  RunConfig config;
  std::string format;
  try {
    if (auto v = env_value<std::uint64_t>("SUMRANK_BUDGET_SPACE")) config.budget.max_space_size = *v;
    if (auto v = env_value<double>("SUMRANK_BUDGET_SECS")) config.budget.time_cap_seconds = *v;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  CLI::App app{"Covering-radius bounds for sum-rank metric codes", "sumrank"};
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"volumes", "Sphere and ball volumes for every radius"},
      {"bounds", "Every lower and upper bound on K for one parameter set"},
      {"table", "Bound table over a parameter grid (comma-separated lists)"},
      {"verify", "Formula-against-enumeration and bracket checks"},
  };
  for (const auto& [name, description] : commands) {
    add_common_options(app.add_subcommand(name, description), config, format);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }
  for (const auto* sub : app.get_subcommands()) config.command = sub->get_name();
  if (format.empty()) format = config.command == "table" ? "csv" : "plain";
  config.format = format == "csv" ? Format::csv : format == "json" ? Format::json : Format::plain;

  std::ostringstream buffer;
  try {
    if (config.budget.time_cap_seconds <= 0) throw UsageError("--budget-secs must be positive");
    int code = kSuccess;
    if (config.command == "volumes") {
      code = cmd_volumes(config, buffer);
    } else if (config.command == "bounds") {
      code = cmd_bounds(config, buffer);
    } else if (config.command == "table") {
      code = cmd_table(config, buffer);
    } else {
      code = cmd_verify(config, buffer, hooks);
    }
    out << buffer.str();
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const BudgetExceeded& e) {
    err << "budget exhausted: " << e.what() << '\n';
    return kBudgetExhausted;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kVerifyFailed;
  }
}

}  // namespace sumrank::cli

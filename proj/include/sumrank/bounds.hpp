#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sumrank/exact.hpp"
#include "sumrank/geometry.hpp"
#include "sumrank/params.hpp"

namespace sumrank {

// Bounds on K(q, m, eta, ell; rho), the least size of a code in F_{q^m}^n
// whose radius-rho sum-rank balls cover the space. Lower bounds are rounded
// up to integers, since K is an integer. Functions that need the nontrivial
// regime 0 < rho < mu*ell throw RangeError outside it.

// floor(mu*ell - (mu/eta) k) + 1, the largest minimum distance of a linear
// [n, k] code. Not capped at mu*ell (k = 0 gives mu*ell + 1).
std::int64_t singleton_max_distance(const CodeParams& params, std::int64_t k);

// ceil(q^{mn} / Vol_B(rho)).
ExactInt sphere_covering_lower(const CodeParams& params, std::int64_t rho);

// Enclosure of q^{mn - rho(m + eta - rho/ell)} / (rho C(ell+rho-1, ell-1) gamma_q^ell).
// Requires 1 < rho < mu*ell.
RealInterval simplified_sphere_covering_interval(const CodeParams& params, std::int64_t rho);
// Ceiling of the interval's lower end.
ExactInt simplified_sphere_covering_lower(const CodeParams& params, std::int64_t rho);

// A covering code of radius rho < mu*ell has at least 3 words. The argument
// needs a scalar multiple of a codeword outside {0, c}, so it is only
// available when q^m > 2; returns nullopt for q^m = 2.
std::optional<ExactInt> minimum_three_lower(const CodeParams& params, std::int64_t rho);

// Conservative intersection value for a codeword at distance at most delta:
// min of Vol_I over every distribution with total in [1, delta].
using ConservativeIntersection = std::function<ExactInt(std::int64_t delta)>;

// Builds the conservative intersection function from an enumerated profile.
ConservativeIntersection enumerated_intersections(const CodeParams& params, std::int64_t rho,
                                                  std::uint64_t cap = kDefaultEnumerationCap);

// Real right-hand side of the iterative lower bound at a fixed k, with
// n - 1 >= k >= 1. Requires eta <= m.
Rational iterative_bound_at(const CodeParams& params, std::int64_t rho, std::int64_t k,
                            const ConservativeIntersection& intersections);

struct IterativeTrace {
  ExactInt value;
  std::vector<std::int64_t> k_values;
  std::vector<ExactInt> round_values;
};

// Iterates the k-dependent lower bound: k starts at floor(log_{q^m}) of the
// simplified sphere-covering bound (clamped to [1, n-1]), each round sets k
// from the previous round's value, stopping once k repeats or the value stops
// improving. Returns the maximum over all rounds and the sphere-covering
// bound; nullopt when eta > m.
std::optional<IterativeTrace> iterative_lower_trace(const CodeParams& params, std::int64_t rho,
                                                    const ConservativeIntersection& intersections);
std::optional<ExactInt> iterative_lower(const CodeParams& params, std::int64_t rho,
                                        const ConservativeIntersection& intersections);

// q^{m(n - rho)}; requires 0 < rho < mu*ell.
ExactInt systematic_upper(const CodeParams& params, std::int64_t rho);

// q^{(m - floor(rho/ell))(n - rho)} for 0 <= rho <= mu*ell. The construction
// extends an [n, n - rho] MSRD code over F_{q^nu}, nu = m - floor(rho/ell),
// whose minimum distance is rho + 1 only when nu >= eta; nullopt otherwise.
// (For eta > nu the value can undercut K: q=2, m=eta=2, ell=1, rho=1 gives
// 2 while three words are needed.)
std::optional<ExactInt> msrd_extension_upper(const CodeParams& params, std::int64_t rho);

enum class PartitionMode {
  // floor(rho_i / ell) with the global block count, for every segment.
  global_ell,
  // Segments are whole blocks: n_i a multiple of eta, floor(rho_i / (n_i/eta)).
  block_consistent,
};

struct PartitionSolution {
  std::int64_t gain = 0;
  std::vector<std::pair<unsigned, unsigned>> segments;  // (n_i, rho_i)
};

// max sum_i gain(n_i, rho_i) over sequences with sum n_i = n, sum rho_i = rho,
// 0 < n_i, 0 <= rho_i <= n_i, n_i + rho_i <= m. Dynamic programming over
// (remaining length, remaining radius); nullopt when no sequence exists.
std::optional<PartitionSolution> product_partition_gain(const CodeParams& params, std::int64_t rho,
                                                        PartitionMode mode = PartitionMode::global_ell);

// q^{m(n - rho) - G}; requires 0 < rho < mu*ell, nullopt when infeasible.
std::optional<ExactInt> product_partition_upper(const CodeParams& params, std::int64_t rho,
                                                PartitionMode mode = PartitionMode::global_ell);

enum class BoundKind { lower, upper, exact };

struct BoundValue {
  std::string name;
  BoundKind kind = BoundKind::lower;
  std::optional<ExactInt> value;  // absent when not applicable
  bool applicable = false;
  std::vector<std::string> assumptions;
  bool informational = false;  // reported but never enters best_lower/best_upper
};

std::string to_string(BoundKind kind);

// Bounds obtained by regrouping the same space into one block (rank metric,
// a lower bound on K) and into n blocks (Hamming metric, an upper bound).
std::vector<BoundValue> relation_bounds(const CodeParams& params, std::int64_t rho);

struct ReportOptions {
  std::uint64_t intersection_cap = kDefaultEnumerationCap;
  bool include_block_consistent = false;
};

struct BoundReport {
  CodeParams params;
  std::int64_t rho;
  std::vector<BoundValue> bounds;
  ExactInt best_lower;
  ExactInt best_upper;
  std::vector<std::string> best_lower_names;
  std::vector<std::string> best_upper_names;
};

// Evaluates every bound for 0 <= rho <= mu*ell. The extremes rho = 0 and
// rho = mu*ell yield a single exact entry. A bound that throws is recorded as
// not applicable. Throws std::logic_error if best_lower > best_upper.
BoundReport compile_report(const CodeParams& params, std::int64_t rho,
                           const ReportOptions& options = {});

// Names of the bounds compile_report evaluates for 0 < rho < mu*ell, in order.
const std::vector<std::string>& report_bound_names();

}  // namespace sumrank

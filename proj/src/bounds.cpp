#include "sumrank/bounds.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <stdexcept>

#include "sumrank/errors.hpp"

namespace sumrank {

namespace {

void require_interior(const CodeParams& params, std::int64_t rho, const char* what) {
  if (rho <= 0 || rho >= static_cast<std::int64_t>(params.max_weight())) {
    throw RangeError(std::string(what) + ": requires 0 < rho < mu*ell = " +
                     std::to_string(params.max_weight()) + ", got rho = " + std::to_string(rho));
  }
}

// Largest k with base^k <= value (value >= 1).
std::int64_t floor_log(const ExactInt& value, const ExactInt& base) {
  std::int64_t k = 0;
  ExactInt p = base;
  while (p <= value) {
    ++k;
    p *= base;
  }
  return k;
}

ExactInt space_exponent_power(const CodeParams& params, std::int64_t exponent) {
  return power(params.q(), static_cast<std::uint64_t>(exponent));
}

}  // namespace

std::int64_t singleton_max_distance(const CodeParams& params, std::int64_t k) {
  if (k < 0 || k > static_cast<std::int64_t>(params.n())) {
    throw RangeError("singleton_max_distance: requires 0 <= k <= n");
  }
  const std::int64_t mu = params.mu();
  const std::int64_t eta = params.eta();
  // floor((mu*ell*eta - mu*k) / eta); the numerator is nonnegative for k <= n.
  return (mu * params.ell() * eta - mu * k) / eta + 1;
}

ExactInt sphere_covering_lower(const CodeParams& params, std::int64_t rho) {
  require_interior(params, rho, "sphere_covering_lower");
  return ceil_div(params.space_size(), ball_volume(params, rho));
}

RealInterval simplified_sphere_covering_interval(const CodeParams& params, std::int64_t rho) {
  require_interior(params, rho, "simplified_sphere_covering_lower");
  if (rho <= 1) throw RangeError("simplified_sphere_covering_lower: requires rho > 1");
  const std::int64_t m = params.m();
  const std::int64_t eta = params.eta();
  const std::int64_t ell = params.ell();
  const std::int64_t n = params.n();
  // exponent * ell = ell (mn - rho (m + eta)) + rho^2
  const std::int64_t exponent_num = ell * (m * n - rho * (m + eta)) + rho * rho;
  const RealInterval numerator = rational_power_interval(params.q(), exponent_num, ell);
  const RealInterval gamma = gamma_q_interval(params.q(), Rational(1, power(10, 30)));
  const RealInterval denominator =
      RealInterval::point(Rational(rho * binomial(ell + rho - 1, ell - 1))) *
      gamma.pow(static_cast<unsigned>(ell));
  return numerator / denominator;
}

ExactInt simplified_sphere_covering_lower(const CodeParams& params, std::int64_t rho) {
  return ceil_rational(simplified_sphere_covering_interval(params, rho).lo());
}

std::optional<ExactInt> minimum_three_lower(const CodeParams& params, std::int64_t rho) {
  require_interior(params, rho, "minimum_three_lower");
  if (power(params.q(), params.m()) == 2) return std::nullopt;
  return ExactInt(3);
}

ConservativeIntersection enumerated_intersections(const CodeParams& params, std::int64_t rho,
                                                  std::uint64_t cap) {
  const IntersectionProfile profile(params, rho, cap);
  const std::int64_t top = params.max_weight();
  auto prefix_min = std::make_shared<std::vector<ExactInt>>(top + 1);
  (*prefix_min)[0] = profile.volume(make_distribution(params, std::vector<unsigned>(params.ell(), 0)));
  for (std::int64_t d = 1; d <= top; ++d) {
    const ExactInt value = profile.range(d).min;
    (*prefix_min)[d] = d == 1 ? value : std::min(value, (*prefix_min)[d - 1]);
  }
  return [prefix_min, top](std::int64_t delta) -> ExactInt {
    if (delta <= 0) return (*prefix_min)[0];
    return (*prefix_min)[std::min(delta, top)];
  };
}

Rational iterative_bound_at(const CodeParams& params, std::int64_t rho, std::int64_t k,
                            const ConservativeIntersection& intersections) {
  require_interior(params, rho, "iterative_lower");
  if (params.eta() > params.m()) throw RangeError("iterative_lower: requires eta <= m");
  const std::int64_t n = params.n();
  if (k < 1 || k > n - 1) throw RangeError("iterative_lower: requires 1 <= k <= n - 1");

  // With eta <= m, mu*ell - (mu/eta) k = n - k.
  const ExactInt qm = power(params.q(), params.m());
  const ExactInt i_k = intersections(n - k);
  ExactInt numerator = params.space_size() - boost::multiprecision::pow(qm, static_cast<unsigned>(k)) * i_k;
  ExactInt qm_prev = 1;
  for (std::int64_t kk = 1; kk <= k; ++kk) {
    const ExactInt qm_cur = qm_prev * qm;
    numerator += (qm_cur - qm_prev) * intersections(n - kk + 1);
    qm_prev = qm_cur;
  }
  const ExactInt denominator = ball_volume(params, rho) - i_k;
  if (denominator <= 0) throw std::logic_error("iterative_lower: nonpositive denominator");
  return Rational(numerator, denominator);
}

std::optional<IterativeTrace> iterative_lower_trace(const CodeParams& params, std::int64_t rho,
                                                    const ConservativeIntersection& intersections) {
  require_interior(params, rho, "iterative_lower");
  if (params.eta() > params.m()) return std::nullopt;
  const std::int64_t n = params.n();
  const ExactInt qm = power(params.q(), params.m());
  const ExactInt sphere = sphere_covering_lower(params, rho);
  const ExactInt start = rho > 1 ? simplified_sphere_covering_lower(params, rho) : sphere;

  auto k_from = [&](const ExactInt& bound) {
    return std::clamp<std::int64_t>(floor_log(std::max(bound, ExactInt(1)), qm), 1, n - 1);
  };

  IterativeTrace trace;
  trace.value = sphere;
  std::int64_t k = k_from(start);
  ExactInt previous = 0;
  for (std::int64_t round = 0; round < n; ++round) {
    const ExactInt value = ceil_rational(iterative_bound_at(params, rho, k, intersections));
    trace.k_values.push_back(k);
    trace.round_values.push_back(value);
    trace.value = std::max(trace.value, value);
    const std::int64_t next_k = k_from(value);
    if (next_k == k || (round > 0 && value <= previous)) break;
    previous = value;
    k = next_k;
  }
  return trace;
}

std::optional<ExactInt> iterative_lower(const CodeParams& params, std::int64_t rho,
                                        const ConservativeIntersection& intersections) {
  auto trace = iterative_lower_trace(params, rho, intersections);
  if (!trace) return std::nullopt;
  return trace->value;
}

ExactInt systematic_upper(const CodeParams& params, std::int64_t rho) {
  require_interior(params, rho, "systematic_upper");
  if (rho > static_cast<std::int64_t>(params.n())) throw RangeError("systematic_upper: requires rho <= n");
  return space_exponent_power(params, std::int64_t{params.m()} * (params.n() - rho));
}

std::optional<ExactInt> msrd_extension_upper(const CodeParams& params, std::int64_t rho) {
  if (rho < 0 || rho > static_cast<std::int64_t>(params.max_weight())) {
    throw RangeError("msrd_extension_upper: requires 0 <= rho <= mu*ell");
  }
  const std::int64_t nu = std::int64_t{params.m()} - rho / params.ell();
  if (nu < static_cast<std::int64_t>(params.eta())) return std::nullopt;
  return space_exponent_power(params, nu * (params.n() - rho));
}

std::optional<PartitionSolution> product_partition_gain(const CodeParams& params, std::int64_t rho,
                                                        PartitionMode mode) {
  if (rho < 0 || rho > static_cast<std::int64_t>(params.n())) {
    throw RangeError("product_partition_gain: requires 0 <= rho <= n");
  }
  const unsigned n = params.n();
  const unsigned m = params.m();
  const auto r_total = static_cast<unsigned>(rho);
  constexpr std::int64_t kInfeasible = std::numeric_limits<std::int64_t>::min();

  auto segment_gain = [&](unsigned ni, unsigned ri) -> std::int64_t {
    if (mode == PartitionMode::global_ell) return std::int64_t{ri / params.ell()} * (ni - ri);
    if (ni % params.eta() != 0) return kInfeasible;
    const unsigned blocks = ni / params.eta();
    return std::int64_t{ri / blocks} * (ni - ri);
  };

  // best[a][b]: max gain covering length a with radius b; choice records the last segment.
  const std::size_t cols = r_total + 1;
  std::vector<std::int64_t> best((n + 1) * cols, kInfeasible);
  std::vector<std::pair<unsigned, unsigned>> choice((n + 1) * cols, {0, 0});
  best[0] = 0;
  for (unsigned a = 1; a <= n; ++a) {
    for (unsigned b = 0; b <= r_total; ++b) {
      std::int64_t top = kInfeasible;
      for (unsigned ni = 1; ni <= a && ni <= m; ++ni) {
        for (unsigned ri = 0; ri <= ni && ri <= b && ni + ri <= m; ++ri) {
          const std::int64_t rest = best[(a - ni) * cols + (b - ri)];
          if (rest == kInfeasible) continue;
          const std::int64_t gain = segment_gain(ni, ri);
          if (gain == kInfeasible) continue;
          if (rest + gain > top) {
            top = rest + gain;
            choice[a * cols + b] = {ni, ri};
          }
        }
      }
      best[a * cols + b] = top;
    }
  }
  if (best[n * cols + r_total] == kInfeasible) return std::nullopt;

  PartitionSolution solution;
  solution.gain = best[n * cols + r_total];
  unsigned a = n;
  unsigned b = r_total;
  while (a > 0) {
    const auto segment = choice[a * cols + b];
    solution.segments.push_back(segment);
    a -= segment.first;
    b -= segment.second;
  }
  std::reverse(solution.segments.begin(), solution.segments.end());
  return solution;
}

std::optional<ExactInt> product_partition_upper(const CodeParams& params, std::int64_t rho,
                                                PartitionMode mode) {
  require_interior(params, rho, "product_partition_upper");
  const auto solution = product_partition_gain(params, rho, mode);
  if (!solution) return std::nullopt;
  return space_exponent_power(params, std::int64_t{params.m()} * (params.n() - rho) - solution->gain);
}

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::lower:
      return "lower";
    case BoundKind::upper:
      return "upper";
    case BoundKind::exact:
      return "exact";
  }
  return "unknown";
}

namespace {

BoundValue evaluate(std::string name, BoundKind kind,
                    const std::function<std::optional<ExactInt>()>& compute,
                    std::vector<std::string> assumptions = {},
                    const std::string& inapplicable_reason = {}) {
  BoundValue bound;
  bound.name = std::move(name);
  bound.kind = kind;
  bound.assumptions = std::move(assumptions);
  try {
    bound.value = compute();
    bound.applicable = bound.value.has_value();
    if (!bound.applicable && !inapplicable_reason.empty()) {
      bound.assumptions.push_back(inapplicable_reason);
    }
  } catch (const std::exception& e) {
    bound.value.reset();
    bound.applicable = false;
    bound.assumptions.emplace_back(e.what());
  }
  return bound;
}

}  // namespace

std::vector<BoundValue> relation_bounds(const CodeParams& params, std::int64_t rho) {
  require_interior(params, rho, "relation_bounds");
  std::vector<BoundValue> result;

  const CodeParams rank = params.reshaped(1);
  result.push_back(evaluate(
      "rank_metric_sphere_covering", BoundKind::lower,
      [&]() -> std::optional<ExactInt> {
        if (rho >= static_cast<std::int64_t>(rank.max_weight())) return std::nullopt;
        return sphere_covering_lower(rank, rho);
      },
      {"K for one block of length n is at most K for ell blocks"},
      "rho >= min(m, n): the rank-metric regrouping is trivial"));

  const CodeParams hamming = params.reshaped(params.n());
  result.push_back(evaluate(
      "hamming_metric_upper", BoundKind::upper,
      [&]() -> std::optional<ExactInt> {
        ExactInt best = systematic_upper(hamming, rho);
        if (auto v = msrd_extension_upper(hamming, rho)) best = std::min(best, *v);
        if (auto v = product_partition_upper(hamming, rho)) best = std::min(best, *v);
        return best;
      },
      {"K for ell blocks is at most K for n blocks of length 1"}));
  return result;
}

const std::vector<std::string>& report_bound_names() {
  static const std::vector<std::string> names = {
      "sphere_covering",  "simplified_sphere_covering", "minimum_three",
      "iterative",        "rank_metric_sphere_covering", "systematic",
      "msrd_extension",   "product_partition",          "hamming_metric_upper",
  };
  return names;
}

BoundReport compile_report(const CodeParams& params, std::int64_t rho, const ReportOptions& options) {
  const std::int64_t top = params.max_weight();
  if (rho < 0 || rho > top) {
    throw RangeError("compile_report: requires 0 <= rho <= mu*ell = " + std::to_string(top));
  }
  BoundReport report{params, rho, {}, 0, 0, {}, {}};

  if (rho == 0 || rho == top) {
    BoundValue exact;
    exact.name = "trivial_extreme";
    exact.kind = BoundKind::exact;
    exact.value = rho == 0 ? params.space_size() : ExactInt(1);
    exact.applicable = true;
    exact.assumptions.push_back(rho == 0 ? "only the full space has covering radius 0"
                                         : "any single word covers at radius mu*ell");
    report.bounds.push_back(exact);
    report.best_lower = report.best_upper = *exact.value;
    report.best_lower_names = report.best_upper_names = {exact.name};
    return report;
  }

  auto& bounds = report.bounds;
  bounds.push_back(evaluate("sphere_covering", BoundKind::lower,
                            [&] { return std::optional(sphere_covering_lower(params, rho)); }));
  bounds.push_back(evaluate("simplified_sphere_covering", BoundKind::lower,
                            [&] { return std::optional(simplified_sphere_covering_lower(params, rho)); },
                            {"certified interval for gamma_q, result rounded down before the ceiling"}));
  bounds.push_back(evaluate("minimum_three", BoundKind::lower,
                            [&] { return minimum_three_lower(params, rho); }, {},
                            "q^m = 2: {0, c} can cover when c has full weight"));
  bounds.push_back(evaluate(
      "iterative", BoundKind::lower,
      [&]() -> std::optional<ExactInt> {
        if (params.eta() > params.m()) return std::nullopt;
        return iterative_lower(params, rho,
                               enumerated_intersections(params, rho, options.intersection_cap));
      },
      {"intersection volumes minimised over block distributions and smaller distances"},
      "eta > m: the distance mu*ell - (mu/eta) k is fractional"));
  for (auto& bound : relation_bounds(params, rho)) {
    if (bound.kind == BoundKind::lower) bounds.push_back(std::move(bound));
  }
  bounds.push_back(evaluate("systematic", BoundKind::upper,
                            [&] { return std::optional(systematic_upper(params, rho)); }));
  bounds.push_back(evaluate("msrd_extension", BoundKind::upper,
                            [&] { return msrd_extension_upper(params, rho); }, {},
                            "m - floor(rho/ell) < eta"));
  bounds.push_back(evaluate("product_partition", BoundKind::upper,
                            [&] { return product_partition_upper(params, rho); },
                            {"global ell inside floor(rho_i/ell)"},
                            "no segment sequence with n_i + rho_i <= m"));
  for (auto& bound : relation_bounds(params, rho)) {
    if (bound.kind == BoundKind::upper) bounds.push_back(std::move(bound));
  }
  if (options.include_block_consistent) {
    auto bound = evaluate(
        "block_consistent_product", BoundKind::upper,
        [&] { return product_partition_upper(params, rho, PartitionMode::block_consistent); },
        {"segments are whole blocks with per-segment block count"},
        "no block-aligned segment sequence");
    bound.informational = true;
    bounds.push_back(std::move(bound));
  }

  bool have_lower = false;
  bool have_upper = false;
  for (const auto& bound : bounds) {
    if (!bound.applicable || bound.informational) continue;
    const ExactInt& v = *bound.value;
    if (bound.kind == BoundKind::lower) {
      if (!have_lower || v > report.best_lower) {
        report.best_lower = v;
        report.best_lower_names.clear();
      }
      if (!have_lower || v == report.best_lower) report.best_lower_names.push_back(bound.name);
      have_lower = true;
    } else if (bound.kind == BoundKind::upper) {
      if (!have_upper || v < report.best_upper) {
        report.best_upper = v;
        report.best_upper_names.clear();
      }
      if (!have_upper || v == report.best_upper) report.best_upper_names.push_back(bound.name);
      have_upper = true;
    }
  }
  if (!have_lower || !have_upper) throw std::logic_error("compile_report: missing bound family");
  if (report.best_lower > report.best_upper) {
    throw std::logic_error("compile_report: best lower bound " + report.best_lower.str() +
                           " exceeds best upper bound " + report.best_upper.str() + " for " +
                           params.to_string() + " rho=" + std::to_string(rho));
  }
  return report;
}

}  // namespace sumrank

#include <doctest.h>

#include <stdexcept>

#include "oracles.hpp"
#include "sumrank/bounds.hpp"
#include "sumrank/errors.hpp"
#include "sumrank/geometry.hpp"

using namespace sumrank;

namespace {

struct P {
  unsigned q, m, eta, ell;
};

// Small parameter sets for property sweeps.
std::vector<CodeParams> sweep_grid() {
  std::vector<CodeParams> grid;
  for (unsigned q : {2u, 3u, 4u}) {
    for (unsigned m = 1; m <= 4; ++m) {
      for (unsigned eta = 1; eta <= 3; ++eta) {
        for (unsigned ell = 1; ell <= 4; ++ell) {
          if (power(q, m * eta) > 4096) continue;
          grid.emplace_back(q, m, eta, ell);
        }
      }
    }
  }
  return grid;
}

const BoundValue* find(const BoundReport& report, const std::string& name) {
  for (const auto& b : report.bounds) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("singleton distance") {
  const CodeParams p(2, 2, 2, 2);
  CHECK(singleton_max_distance(p, 0) == 5);
  CHECK(singleton_max_distance(p, 2) == 3);
  CHECK(singleton_max_distance(p, 4) == 1);
  CHECK(singleton_max_distance(CodeParams(2, 1, 1, 7), 4) == 4);
  // mu/eta = 2/3: floor(4 - 2/3) + 1 = 4
  CHECK(singleton_max_distance(CodeParams(2, 2, 3, 2), 1) == 4);
}

TEST_CASE("sphere-covering bound") {
  CHECK(sphere_covering_lower(CodeParams(2, 1, 1, 7), 1) == 16);
  CHECK(sphere_covering_lower(CodeParams(2, 2, 2, 2), 1) == 14);  // ceil(256 / 19)
  CHECK(sphere_covering_lower(CodeParams(3, 1, 1, 4), 1) == 9);   // ternary Hamming code
  CHECK_THROWS_AS(sphere_covering_lower(CodeParams(2, 2, 2, 2), 0), RangeError);
  CHECK_THROWS_AS(sphere_covering_lower(CodeParams(2, 2, 2, 2), 4), RangeError);
}

TEST_CASE("simplified sphere-covering bound") {
  const CodeParams p(2, 2, 2, 2);
  // 2^{mn - rho(m + eta - rho/ell)} / (rho C(ell + rho - 1, ell - 1) gamma_2^ell),
  // evaluated independently at 30 digits.
  const auto two = simplified_sphere_covering_interval(p, 2);
  CHECK(two.lo_string(20) == "0.05559904257583234768");
  CHECK(two.hi_string(20) == "0.05559904257583234769");
  CHECK(two.width() < Rational(1, power(10, 25)));
  const auto three = simplified_sphere_covering_interval(p, 3);
  CHECK(three.lo_string(22) == "0.0098286150082126558805");
  CHECK(simplified_sphere_covering_lower(p, 2) == 1);
  CHECK_THROWS_AS(simplified_sphere_covering_interval(p, 1), RangeError);
  CHECK_THROWS_AS(simplified_sphere_covering_interval(p, 4), RangeError);
}

TEST_CASE("at least three codewords") {
  CHECK(minimum_three_lower(CodeParams(2, 2, 2, 2), 1) == ExactInt(3));
  CHECK(minimum_three_lower(CodeParams(3, 1, 1, 4), 3) == ExactInt(3));
  // With q^m = 2 two words can cover: {00, 11} at radius 1 in F_2^2.
  CHECK(minimum_three_lower(CodeParams(2, 1, 1, 2), 1) == std::nullopt);
  CHECK(minimum_three_lower(CodeParams(2, 1, 1, 3), 1) == std::nullopt);
  CHECK_THROWS_AS(minimum_three_lower(CodeParams(2, 2, 2, 2), 0), RangeError);
  CHECK_THROWS_AS(minimum_three_lower(CodeParams(2, 2, 2, 2), 4), RangeError);
}

TEST_CASE("systematic and extension upper bounds") {
  CHECK(systematic_upper(CodeParams(2, 2, 2, 2), 1) == 64);
  CHECK(systematic_upper(CodeParams(2, 1, 1, 7), 1) == 64);
  CHECK(systematic_upper(CodeParams(3, 2, 2, 3), 2) == power(3, 8));
  CHECK_THROWS_AS(systematic_upper(CodeParams(2, 2, 2, 2), 0), RangeError);

  // rho < ell: floor(rho/ell) = 0
  const CodeParams p(2, 3, 1, 4);
  for (int rho = 1; rho < 4; ++rho) CHECK(msrd_extension_upper(p, rho) == systematic_upper(p, rho));
  CHECK(msrd_extension_upper(CodeParams(2, 3, 2, 2), 2) == ExactInt(16));
  CHECK(msrd_extension_upper(CodeParams(2, 2, 1, 4), 4) == ExactInt(1));
  // m - floor(rho/ell) < eta: the construction has no MSRD code to start from
  CHECK(msrd_extension_upper(CodeParams(2, 2, 2, 1), 1) == std::nullopt);
  CHECK(msrd_extension_upper(CodeParams(2, 2, 2, 2), 3) == std::nullopt);
  CHECK_THROWS_AS(msrd_extension_upper(CodeParams(2, 2, 2, 2), 5), RangeError);
}

TEST_CASE("product partition dynamic programming matches exhaustive search") {
  for (unsigned n = 1; n <= 10; ++n) {
    for (unsigned eta = 1; eta <= n; ++eta) {
      if (n % eta != 0) continue;
      const unsigned ell = n / eta;
      for (unsigned m = 1; m <= 10; ++m) {
        const CodeParams p(2, m, eta, ell);
        for (unsigned rho = 0; rho <= n; ++rho) {
          CAPTURE(p.to_string());
          CAPTURE(rho);
          const long long expected = oracle::best_partition_gain(n, rho, m, ell);
          const auto got = product_partition_gain(p, rho);
          if (expected < 0) {
            CHECK_FALSE(got.has_value());
            continue;
          }
          REQUIRE(got.has_value());
          CHECK(got->gain == expected);
          // the reported segments realise the gain
          unsigned total_n = 0;
          unsigned total_rho = 0;
          long long gain = 0;
          for (const auto& [ni, ri] : got->segments) {
            CHECK(ni + ri <= m);
            CHECK(ri <= ni);
            total_n += ni;
            total_rho += ri;
            gain += static_cast<long long>(ri / ell) * (ni - ri);
          }
          CHECK(total_n == n);
          CHECK(total_rho == rho);
          CHECK(gain == expected);
        }
      }
    }
  }
}

TEST_CASE("product partition bound") {
  // (q=2, m=8, eta=1, ell=8, rho=4): gain from the DP
  const CodeParams p(2, 8, 1, 8);
  const auto sol = product_partition_gain(p, 4);
  REQUIRE(sol.has_value());
  CHECK(sol->gain == oracle::best_partition_gain(8, 4, 8, 8));
  CHECK(product_partition_upper(p, 4) == power(2, 8 * 4 - sol->gain));
  // single segment (n, rho) with n + rho <= m agrees with the extension bound
  const CodeParams single(2, 6, 2, 2);
  CHECK(product_partition_upper(single, 2) <= msrd_extension_upper(single, 2));
  // every split has n_i + rho_i > m
  CHECK(product_partition_upper(CodeParams(2, 1, 1, 7), 1) == std::nullopt);
  // block-aligned segments of length 2 leave no room for rho_i > 0 when m = 2
  CHECK_FALSE(product_partition_gain(CodeParams(2, 2, 2, 2), 2, PartitionMode::block_consistent).has_value());
  CHECK(product_partition_gain(CodeParams(2, 4, 2, 2), 2, PartitionMode::block_consistent).has_value());
}

TEST_CASE("iterative bound") {
  const CodeParams hamming(2, 1, 1, 7);
  const auto intersections = enumerated_intersections(hamming, 1);
  const auto value = iterative_lower(hamming, 1, intersections);
  REQUIRE(value.has_value());
  CHECK(*value == 16);
  // eta > m: not applicable
  const CodeParams wide(2, 1, 2, 2);
  CHECK_FALSE(iterative_lower(wide, 1, enumerated_intersections(wide, 1)).has_value());

  const CodeParams p(2, 2, 1, 4);
  const auto trace = iterative_lower_trace(p, 1, enumerated_intersections(p, 1));
  REQUIRE(trace.has_value());
  CHECK(trace->value == 21);
  CHECK(trace->value >= sphere_covering_lower(p, 1));
  CHECK_FALSE(trace->k_values.empty());
  for (const auto k : trace->k_values) {
    CHECK(k >= 1);
    CHECK(k <= 3);
  }
  // the conservative intersection is nonincreasing in delta
  const auto vol = enumerated_intersections(p, 2);
  for (int d = 1; d < 4; ++d) CHECK(vol(d + 1) <= vol(d));
}

TEST_CASE("report extremes and best bracket") {
  const CodeParams p(2, 2, 2, 2);
  const auto zero = compile_report(p, 0);
  REQUIRE(zero.bounds.size() == 1);
  CHECK(zero.bounds[0].kind == BoundKind::exact);
  CHECK(zero.best_lower == 256);
  CHECK(zero.best_upper == 256);
  const auto full = compile_report(p, 4);
  CHECK(full.best_lower == 1);
  CHECK(full.best_upper == 1);
  CHECK_THROWS_AS(compile_report(p, 5), RangeError);
  CHECK_THROWS_AS(compile_report(p, -1), RangeError);

  const auto perfect = compile_report(CodeParams(2, 1, 1, 7), 1);
  CHECK(perfect.best_lower == 16);
  CHECK(perfect.best_upper >= 16);
  CHECK(perfect.bounds.size() == report_bound_names().size());
  for (std::size_t i = 0; i < perfect.bounds.size(); ++i) CHECK(perfect.bounds[i].name == report_bound_names()[i]);

  const auto inapplicable = find(perfect, "minimum_three");
  REQUIRE(inapplicable != nullptr);
  CHECK_FALSE(inapplicable->applicable);
  CHECK_FALSE(inapplicable->value.has_value());
  CHECK_FALSE(inapplicable->assumptions.empty());

  ReportOptions options;
  options.include_block_consistent = true;
  const auto extra = compile_report(p, 2, options);
  const auto* block = find(extra, "block_consistent_product");
  REQUIRE(block != nullptr);
  CHECK(block->informational);
  CHECK(extra.best_upper == compile_report(p, 2).best_upper);
}

TEST_CASE("relation bounds come from regrouped parameters") {
  const CodeParams p(2, 3, 2, 2);
  const auto rel = relation_bounds(p, 1);
  REQUIRE(rel.size() == 2);
  CHECK(rel[0].kind == BoundKind::lower);
  CHECK(rel[0].value == sphere_covering_lower(p.reshaped(1), 1));
  CHECK(*rel[0].value <= sphere_covering_lower(p, 1));
  CHECK(rel[1].kind == BoundKind::upper);
  CHECK(*rel[1].value <= systematic_upper(p, 1));
  // rho beyond min(m, n) after regrouping into one block
  const auto trivial = relation_bounds(CodeParams(2, 1, 1, 5), 2);
  CHECK_FALSE(trivial[0].applicable);
}

TEST_CASE("bound dominance across a sweep") {
  std::size_t points = 0;
  std::size_t rises = 0;
  for (const auto& p : sweep_grid()) {
    const std::int64_t top = p.max_weight();
    ExactInt previous_lower = p.space_size();
    ExactInt previous_upper = p.space_size();
    for (std::int64_t rho = 1; rho < top; ++rho) {
      CAPTURE(p.to_string());
      CAPTURE(rho);
      const auto report = compile_report(p, rho);
      ++points;
      const auto sc = sphere_covering_lower(p, rho);
      const auto sys = systematic_upper(p, rho);
      if (rho > 1) CHECK(simplified_sphere_covering_lower(p, rho) <= sc);
      if (const auto* it = find(report, "iterative"); it->applicable) CHECK(*it->value >= sc);
      if (const auto v = msrd_extension_upper(p, rho)) CHECK(*v <= sys);
      for (const auto& lo : report.bounds) {
        if (!lo.applicable || lo.kind != BoundKind::lower) continue;
        for (const auto& hi : report.bounds) {
          if (!hi.applicable || hi.kind != BoundKind::upper) continue;
          CHECK_MESSAGE(*lo.value <= *hi.value, lo.name << " exceeds " << hi.name);
        }
      }
      CHECK(report.best_lower <= previous_lower);
      // The upper bracket only rises where the extension bound stops
      // applying (m - floor(rho/ell) drops below eta).
      if (report.best_upper > previous_upper) {
        CHECK(msrd_extension_upper(p, rho - 1).has_value());
        CHECK_FALSE(msrd_extension_upper(p, rho).has_value());
        ++rises;
      }
      previous_lower = report.best_lower;
      previous_upper = report.best_upper;
    }
  }
  CHECK(points >= 100);
  MESSAGE("upper bracket rises at " << rises << " of " << points << " points");
}

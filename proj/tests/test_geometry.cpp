#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "oracles.hpp"
#include "sumrank/errors.hpp"
#include "sumrank/geometry.hpp"
#include "sumrank/oracle.hpp"
#include "sumrank/space.hpp"

using namespace sumrank;

namespace {

// The inclusion-exclusion as printed in the source material, with
// C(t + ell - (mu+1) i, ell - 1) in place of C(t - (mu+1) i + ell - 1, ell - 1).
ExactInt printed_composition_count(std::int64_t t, std::int64_t ell, std::int64_t mu) {
  ExactInt total = 0;
  for (std::int64_t i = 0; i <= ell; ++i) {
    const ExactInt term = binomial(ell, i) * binomial(t + ell - (mu + 1) * i, ell - 1);
    total += i % 2 == 0 ? term : ExactInt(-term);
  }
  return total;
}

}  // namespace

TEST_CASE("bounded composition counts against recursion") {
  for (unsigned t = 0; t <= 12; ++t) {
    for (unsigned ell = 1; ell <= 6; ++ell) {
      for (unsigned mu = 1; mu <= 4; ++mu) {
        const auto expected = oracle::compositions(t, ell, mu);
        CAPTURE(t);
        CAPTURE(ell);
        CAPTURE(mu);
        REQUIRE(count_bounded_compositions(t, ell, mu) == expected.size());
        CHECK(count_bounded_compositions(t, ell, mu) <= binomial(t + ell - 1, ell - 1));
        std::size_t seen = 0;
        for (const auto& c : enumerate_bounded_compositions(t, ell, mu)) {
          REQUIRE(c.total == t);
          REQUIRE(c.parts.size() == ell);
          REQUIRE(std::find(expected.begin(), expected.end(), c.parts) != expected.end());
          ++seen;
        }
        CHECK(seen == expected.size());
      }
    }
  }
  CHECK(count_bounded_compositions(-1, 3, 2) == 0);
  CHECK(count_bounded_compositions(7, 3, 2) == 0);
  CHECK_THROWS_AS(count_bounded_compositions(1, 0, 1), std::invalid_argument);
}

TEST_CASE("printed inclusion-exclusion is off by one in the binomial's top argument") {
  // Two compositions of 1 into two parts bounded by 1: (1,0) and (0,1).
  CHECK(count_bounded_compositions(1, 2, 1) == 2);
  // 3 - 2 * 1 + 0
  CHECK(printed_composition_count(1, 2, 1) == 1);
  CHECK(printed_composition_count(1, 2, 1) != oracle::compositions(1, 2, 1).size());
}

TEST_CASE("composition enumeration order") {
  std::vector<std::vector<unsigned>> got;
  for (const auto& c : enumerate_bounded_compositions(1, 2, 1)) got.push_back(c.parts);
  CHECK(got == std::vector<std::vector<unsigned>>{{1, 0}, {0, 1}});

  got.clear();
  for (const auto& c : enumerate_bounded_compositions(3, 3, 2)) got.push_back(c.parts);
  CHECK(std::is_sorted(got.rbegin(), got.rend()));
  CHECK(got.size() == 7);
  CHECK(enumerate_bounded_compositions(0, 3, 2).begin()->parts == std::vector<unsigned>{0, 0, 0});
  CHECK(enumerate_bounded_compositions(9, 3, 2).begin() == enumerate_bounded_compositions(9, 3, 2).end());
}

TEST_CASE("sphere volumes against an independent weight histogram") {
  struct P {
    unsigned q, m, eta, ell;
  };
  for (const P p : {P{2, 2, 2, 2}, P{2, 1, 1, 7}, P{3, 2, 1, 3}, P{2, 3, 2, 2}, P{3, 1, 2, 3}, P{2, 2, 3, 2},
                    P{2, 4, 1, 1}, P{3, 2, 2, 1}}) {
    const CodeParams params(p.q, p.m, p.eta, p.ell);
    CAPTURE(params.to_string());
    const auto expected = oracle::weight_histogram(p.q, p.m, p.eta, p.ell);
    const auto volumes = sphere_volumes(params);
    REQUIRE(volumes.size() == expected.size());
    for (std::size_t t = 0; t < expected.size(); ++t) CHECK(volumes[t] == expected[t]);
    CHECK(ball_volume(params, params.max_weight()) == params.space_size());
  }
}

TEST_CASE("sphere volumes against full enumeration of the space") {
  const CodeParams params(4, 1, 2, 2);  // F_4 entries exercise the extension-field path
  const auto brute = brute_weight_distribution(params);
  const auto volumes = sphere_volumes(params);
  REQUIRE(brute.size() == volumes.size());
  for (std::size_t t = 0; t < brute.size(); ++t) CHECK(volumes[t] == brute[t]);
}

TEST_CASE("volume examples") {
  const CodeParams p(2, 2, 2, 2);
  CHECK(sphere_volume(p, 0) == 1);
  CHECK(sphere_volume(p, 1) == 18);
  CHECK(ball_volume(p, 1) == 19);
  CHECK(ball_volume(p, 4) == 256);
  CHECK(sphere_volume(p, 5) == 0);
  CHECK(sphere_volume(p, -1) == 0);
  CHECK(ball_volume(p, -1) == 0);
  CHECK(ball_volume(p, 9) == 256);

  // one coordinate per block: Hamming metric over F_{q^m}
  const CodeParams hamming(2, 1, 1, 7);
  for (int t = 0; t <= 7; ++t) CHECK(sphere_volume(hamming, t) == binomial(7, t));
  const CodeParams h3(3, 2, 1, 4);
  for (int t = 0; t <= 4; ++t) CHECK(sphere_volume(h3, t) == binomial(4, t) * power(8, t));

  // one block: rank metric
  const CodeParams rank(2, 3, 4, 1);
  for (int t = 0; t <= 3; ++t) CHECK(sphere_volume(rank, t) == num_matrices_of_rank(3, 4, t, 2));
}

TEST_CASE("canonical centers have the requested weights") {
  const CodeParams p(2, 2, 3, 3);
  const SumRankSpace space(p);
  const auto dist = make_distribution(p, {2, 0, 1});
  const BlockVector center = canonical_center(p, dist);
  REQUIRE(center.blocks.size() == 3);
  CHECK(rank_over_base(space.field(), center.blocks[0]) == 2);
  CHECK(rank_over_base(space.field(), center.blocks[1]) == 0);
  CHECK(rank_over_base(space.field(), center.blocks[2]) == 1);
  CHECK(space.weight(space.index_of(center)) == 3);
  CHECK_THROWS_AS(make_distribution(p, {3, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(make_distribution(p, {1, 1}), std::invalid_argument);
}

TEST_CASE("intersection volumes against full enumeration") {
  struct P {
    unsigned q, m, eta, ell;
  };
  for (const P p : {P{2, 2, 2, 2}, P{2, 1, 1, 6}, P{3, 1, 2, 2}, P{2, 2, 1, 3}}) {
    const CodeParams params(p.q, p.m, p.eta, p.ell);
    const std::int64_t top = params.max_weight();
    for (std::int64_t tau = 0; tau <= top; ++tau) {
      const IntersectionProfile profile(params, tau);
      for (std::int64_t delta = 0; delta <= top; ++delta) {
        for (const auto& dist : enumerate_bounded_compositions(delta, params.ell(), params.mu())) {
          CAPTURE(params.to_string());
          CAPTURE(tau);
          CAPTURE(delta);
          const ExactInt brute = brute_intersection_volume(params, tau, dist);
          REQUIRE(intersection_volume(params, tau, dist) == brute);
          REQUIRE(profile.volume(dist) == brute);
        }
      }
    }
  }
}

TEST_CASE("intersection volume edge cases") {
  const CodeParams p(2, 2, 2, 2);
  // center beyond 2 tau: the balls are disjoint
  CHECK(intersection_volume(p, 1, make_distribution(p, {2, 1})) == 0);
  // distance zero: the whole ball
  CHECK(intersection_volume(p, 2, make_distribution(p, {0, 0})) == ball_volume(p, 2));
  // intersections shrink as the centers separate
  const auto near = intersection_volume_range(p, 2, 1);
  const auto far = intersection_volume_range(p, 2, 3);
  CHECK(near.min >= far.max);
  CHECK(intersection_volume_range(p, 2, 9).max == 0);
  // over budget
  CHECK_THROWS_AS(intersection_volume(p, 1, make_distribution(p, {1, 0}), 8), BudgetExceeded);
}

TEST_CASE("intersection volume depends on the center's block distribution") {
  // Same total weight, different split over blocks.
  const CodeParams p(2, 2, 2, 2);
  const ExactInt split = intersection_volume(p, 2, make_distribution(p, {1, 1}));
  const ExactInt lumped = intersection_volume(p, 2, make_distribution(p, {2, 0}));
  CHECK(split == brute_intersection_volume(p, 2, make_distribution(p, {1, 1})));
  CHECK(lumped == brute_intersection_volume(p, 2, make_distribution(p, {2, 0})));
  CHECK(split != lumped);
  // but not on the particular center inside one distribution class
  const SumRankSpace space(p);
  const auto ball = space.ball_offsets(2);
  std::vector<ExactInt> seen;
  for (std::uint64_t x = 0; x < space.size(); ++x) {
    if (space.weight(x) != 2 || space.blocks().rank(space.block(x, 0)) != 2) continue;
    std::uint64_t count = 0;
    for (const auto y : ball) count += space.distance(x, y) <= 2 ? 1 : 0;
    seen.push_back(count);
  }
  CHECK(std::all_of(seen.begin(), seen.end(), [&](const ExactInt& v) { return v == lumped; }));
}

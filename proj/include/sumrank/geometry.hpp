#pragma once

#include <cstdint>
#include <iterator>
#include <vector>

#include "sumrank/exact.hpp"
#include "sumrank/params.hpp"
#include "sumrank/space.hpp"

namespace sumrank {

/// Ordered ell-tuple of block ranks in [0, mu] with sum `total`.
struct Composition {
  std::vector<unsigned> parts;
  unsigned total = 0;

  friend bool operator==(const Composition&, const Composition&) = default;
};

// Per-block rank pattern of a ball center; same shape as Composition.
using WeightDistribution = Composition;

// Throws std::invalid_argument if parts are inconsistent with params.
WeightDistribution make_distribution(const CodeParams& params, std::vector<unsigned> parts);

// Number of ordered ell-tuples in [0, mu] summing to t, by inclusion-exclusion
// sum_i (-1)^i C(ell, i) C(t - (mu+1) i + ell - 1, ell - 1).
ExactInt count_bounded_compositions(std::int64_t t, std::int64_t ell, std::int64_t mu);

/// Lazily enumerates bounded compositions in decreasing lexicographic order,
/// e.g. (t=1, ell=2, mu=1) yields (1,0) then (0,1).
class BoundedCompositions {
public:
  class iterator {
  public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Composition;
    using difference_type = std::ptrdiff_t;
    using pointer = const Composition*;
    using reference = const Composition&;

    iterator() = default;
    reference operator*() const { return current_; }
    pointer operator->() const { return &current_; }
    iterator& operator++();
    iterator operator++(int) {
      iterator copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.done_ == b.done_; }

  private:
    friend class BoundedCompositions;
    iterator(unsigned t, unsigned ell, unsigned mu);
    void fill_from(std::size_t position, unsigned remaining);

    Composition current_;
    unsigned mu_ = 0;
    bool done_ = true;
  };

  BoundedCompositions(unsigned t, unsigned ell, unsigned mu) : t_(t), ell_(ell), mu_(mu) {}
  iterator begin() const { return iterator(t_, ell_, mu_); }
  iterator end() const { return iterator(); }

private:
  unsigned t_;
  unsigned ell_;
  unsigned mu_;
};

inline BoundedCompositions enumerate_bounded_compositions(unsigned t, unsigned ell, unsigned mu) {
  return BoundedCompositions(t, ell, mu);
}

// Vol_S(t): vectors of sum-rank weight exactly t, via an ell-fold convolution
// of the per-block rank counts [NM_q(eta, m, j)]_{j=0..mu}.
ExactInt sphere_volume(const CodeParams& params, std::int64_t t);
// Vol_B(t) = sum_{i<=min(t, mu*ell)} Vol_S(i).
ExactInt ball_volume(const CodeParams& params, std::int64_t t);
// All sphere volumes for t = 0..mu*ell in one pass.
std::vector<ExactInt> sphere_volumes(const CodeParams& params);

// Block i is the m x eta matrix with dist.parts[i] ones on the diagonal.
BlockVector canonical_center(const CodeParams& params, const WeightDistribution& dist);

// |{y : wt(y) <= tau and d(y, x) <= tau}| for x = canonical_center(dist).
//
// The count factors over blocks: each block contributes a histogram of
// (rank(Y), rank(Y - X_i)) over all q^{m*eta} block matrices, and the
// histograms are convolved with both coordinates truncated at tau. Only the
// per-block enumeration counts against `cap` (BudgetExceeded otherwise).
// Returns 0 without enumerating when dist.total > 2 tau.
ExactInt intersection_volume(const CodeParams& params, std::int64_t tau,
                             const WeightDistribution& dist,
                             std::uint64_t cap = kDefaultEnumerationCap);

struct IntersectionRange {
  ExactInt min;
  ExactInt max;
};

/// Precomputed per-block (rank(Y), rank(Y - X_r)) histograms for one radius,
/// reusable across every center distribution.
class IntersectionProfile {
public:
  // Throws BudgetExceeded when q^{m*eta} > cap.
  IntersectionProfile(const CodeParams& params, std::int64_t tau,
                      std::uint64_t cap = kDefaultEnumerationCap);

  const CodeParams& params() const { return params_; }
  ExactInt volume(const WeightDistribution& dist) const;
  // Extremes over all distributions with the given total.
  IntersectionRange range(std::int64_t delta) const;

private:
  CodeParams params_;
  std::int64_t tau_;
  unsigned side_;
  std::vector<std::vector<std::uint64_t>> histograms_;
};

// Minimum and maximum of intersection_volume over every distribution with
// total exactly delta (empty range -> {0, 0} when delta > mu*ell).
IntersectionRange intersection_volume_range(const CodeParams& params, std::int64_t tau,
                                            std::int64_t delta,
                                            std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace sumrank

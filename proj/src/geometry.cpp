#include "sumrank/geometry.hpp"

#include <algorithm>
#include <stdexcept>

#include "sumrank/finite_field.hpp"

namespace sumrank {

WeightDistribution make_distribution(const CodeParams& params, std::vector<unsigned> parts) {
  if (parts.size() != params.ell()) {
    throw std::invalid_argument("distribution must have exactly ell parts");
  }
  unsigned total = 0;
  for (unsigned p : parts) {
    if (p > params.mu()) throw std::invalid_argument("distribution part exceeds mu");
    total += p;
  }
  return WeightDistribution{std::move(parts), total};
}

ExactInt count_bounded_compositions(std::int64_t t, std::int64_t ell, std::int64_t mu) {
  if (ell < 1) throw std::invalid_argument("count_bounded_compositions: ell must be at least 1");
  if (t < 0 || mu < 0) return 0;
  ExactInt count = 0;
  for (std::int64_t i = 0; i <= ell; ++i) {
    const ExactInt term = binomial(ell, i) * binomial(t - (mu + 1) * i + ell - 1, ell - 1);
    if (i % 2 == 0) {
      count += term;
    } else {
      count -= term;
    }
  }
  return count;
}

BoundedCompositions::iterator::iterator(unsigned t, unsigned ell, unsigned mu) : mu_(mu) {
  if (ell == 0 || std::uint64_t{t} > std::uint64_t{mu} * ell) return;
  current_.parts.assign(ell, 0);
  current_.total = t;
  done_ = false;
  fill_from(0, t);
}

// Greedy fill of positions [position, ell) with the largest admissible parts.
void BoundedCompositions::iterator::fill_from(std::size_t position, unsigned remaining) {
  for (std::size_t i = position; i < current_.parts.size(); ++i) {
    const unsigned part = std::min(mu_, remaining);
    current_.parts[i] = part;
    remaining -= part;
  }
}

BoundedCompositions::iterator& BoundedCompositions::iterator::operator++() {
  auto& parts = current_.parts;
  const std::size_t ell = parts.size();
  // Suffix sum after position i, scanning from the right.
  unsigned suffix = ell > 0 ? parts[ell - 1] : 0;
  for (std::size_t i = ell - 1; i-- > 0;) {
    const unsigned capacity = mu_ * static_cast<unsigned>(ell - i - 1);
    if (parts[i] > 0 && suffix + 1 <= capacity) {
      --parts[i];
      fill_from(i + 1, suffix + 1);
      return *this;
    }
    suffix += parts[i];
  }
  done_ = true;
  return *this;
}

std::vector<ExactInt> sphere_volumes(const CodeParams& params) {
  const unsigned mu = params.mu();
  std::vector<ExactInt> per_block(mu + 1);
  for (unsigned j = 0; j <= mu; ++j) {
    per_block[j] = num_matrices_of_rank(params.m(), params.eta(), j, params.q());
  }
  std::vector<ExactInt> volumes{1};
  for (unsigned block = 0; block < params.ell(); ++block) {
    std::vector<ExactInt> next(volumes.size() + mu);
    for (std::size_t a = 0; a < volumes.size(); ++a) {
      if (volumes[a] == 0) continue;
      for (unsigned j = 0; j <= mu; ++j) next[a + j] += volumes[a] * per_block[j];
    }
    volumes = std::move(next);
  }
  return volumes;
}

ExactInt sphere_volume(const CodeParams& params, std::int64_t t) {
  if (t < 0 || t > static_cast<std::int64_t>(params.max_weight())) return 0;
  return sphere_volumes(params)[static_cast<std::size_t>(t)];
}

ExactInt ball_volume(const CodeParams& params, std::int64_t t) {
  if (t < 0) return 0;
  const auto volumes = sphere_volumes(params);
  ExactInt total = 0;
  const auto last = std::min<std::int64_t>(t, params.max_weight());
  for (std::int64_t i = 0; i <= last; ++i) total += volumes[static_cast<std::size_t>(i)];
  return total;
}

BlockVector canonical_center(const CodeParams& params, const WeightDistribution& dist) {
  if (dist.parts.size() != params.ell()) {
    throw std::invalid_argument("canonical_center: distribution has wrong length");
  }
  BlockVector center;
  for (unsigned part : dist.parts) {
    if (part > params.mu()) throw std::invalid_argument("canonical_center: part exceeds mu");
    Matrix block(params.m(), params.eta());
    for (unsigned i = 0; i < part; ++i) block.at(i, i) = 1;
    center.blocks.push_back(std::move(block));
  }
  return center;
}

namespace {

unsigned clamp_radius(const CodeParams& params, std::int64_t tau) {
  if (tau < 0) throw std::invalid_argument("intersection volume: radius must be nonnegative");
  return static_cast<unsigned>(std::min<std::int64_t>(tau, params.max_weight()));
}

}  // namespace

IntersectionProfile::IntersectionProfile(const CodeParams& params, std::int64_t tau,
                                         std::uint64_t cap)
    : params_(params), tau_(tau), side_(clamp_radius(params, tau) + 1) {
  const FiniteField field = field_of_order(params.q());
  const BlockTables tables(field, params.m(), params.eta(), cap);
  const unsigned mu = params.mu();
  histograms_.resize(mu + 1);
  for (unsigned r = 0; r <= mu; ++r) {
    Matrix diag(params.m(), params.eta());
    for (unsigned i = 0; i < r; ++i) diag.at(i, i) = 1;
    const std::uint64_t center = tables.index_of(diag);
    std::vector<std::uint64_t> hist(std::size_t{side_} * side_, 0);
    for (std::uint64_t y = 0; y < tables.size(); ++y) {
      const unsigned a = tables.rank(y);
      const unsigned b = tables.rank(tables.sub(y, center));
      if (a < side_ && b < side_) ++hist[a * side_ + b];
    }
    histograms_[r] = std::move(hist);
  }
}

ExactInt IntersectionProfile::volume(const WeightDistribution& dist) const {
  const auto checked = make_distribution(params_, dist.parts);
  if (static_cast<std::int64_t>(checked.total) > 2 * tau_) return 0;
  const std::size_t side = side_;
  std::vector<ExactInt> state(side * side);
  state[0] = 1;
  for (unsigned part : checked.parts) {
    const auto& hist = histograms_[part];
    std::vector<ExactInt> next(side * side);
    for (std::size_t a0 = 0; a0 < side; ++a0) {
      for (std::size_t b0 = 0; b0 < side; ++b0) {
        const ExactInt& weight = state[a0 * side + b0];
        if (weight == 0) continue;
        for (std::size_t a = 0; a0 + a < side; ++a) {
          for (std::size_t b = 0; b0 + b < side; ++b) {
            const std::uint64_t c = hist[a * side + b];
            if (c != 0) next[(a0 + a) * side + (b0 + b)] += weight * c;
          }
        }
      }
    }
    state = std::move(next);
  }
  ExactInt total = 0;
  for (const auto& v : state) total += v;
  return total;
}

IntersectionRange IntersectionProfile::range(std::int64_t delta) const {
  if (delta < 0 || delta > static_cast<std::int64_t>(params_.max_weight()) || delta > 2 * tau_) {
    return {0, 0};
  }
  IntersectionRange result;
  bool first = true;
  for (const auto& comp :
       enumerate_bounded_compositions(static_cast<unsigned>(delta), params_.ell(), params_.mu())) {
    ExactInt value = volume(comp);
    if (first || value < result.min) result.min = value;
    if (first || value > result.max) result.max = value;
    first = false;
  }
  return result;
}

ExactInt intersection_volume(const CodeParams& params, std::int64_t tau,
                             const WeightDistribution& dist, std::uint64_t cap) {
  clamp_radius(params, tau);
  const auto checked = make_distribution(params, dist.parts);
  if (static_cast<std::int64_t>(checked.total) > 2 * tau) return 0;
  return IntersectionProfile(params, tau, cap).volume(checked);
}

IntersectionRange intersection_volume_range(const CodeParams& params, std::int64_t tau,
                                            std::int64_t delta, std::uint64_t cap) {
  clamp_radius(params, tau);
  if (delta < 0 || delta > static_cast<std::int64_t>(params.max_weight()) || delta > 2 * tau) {
    return {0, 0};
  }
  return IntersectionProfile(params, tau, cap).range(delta);
}

}  // namespace sumrank

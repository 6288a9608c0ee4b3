#include "sumrank/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

#include "sumrank/bounds.hpp"
#include "sumrank/errors.hpp"

namespace sumrank {

namespace {

using Clock = std::chrono::steady_clock;

class Deadline {
public:
  explicit Deadline(double seconds)
      : end_(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                std::chrono::duration<double>(seconds))) {}

  void check(const char* what) const {
    if (Clock::now() > end_) throw BudgetExceeded(std::string(what) + ": time budget exhausted");
  }

private:
  Clock::time_point end_;
};

void require_space(const CodeParams& params, std::uint64_t cap, const char* what) {
  if (params.space_size() > cap) {
    throw BudgetExceeded(std::string(what) + ": space of " + params.space_size().str() +
                         " vectors exceeds budget " + std::to_string(cap));
  }
}

std::vector<std::uint64_t> sorted_unique(std::vector<std::uint64_t> words) {
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return words;
}

// Span of `rows` over F_{q^m}.
std::vector<std::uint64_t> span_of(const SumRankSpace& space, const FiniteField& extension,
                                   const std::vector<std::uint64_t>& rows) {
  std::vector<std::uint64_t> words{0};
  for (const auto row : rows) {
    std::vector<std::uint64_t> next;
    next.reserve(words.size() * extension.order());
    for (FiniteField::Element alpha = 0; alpha < extension.order(); ++alpha) {
      const std::uint64_t scaled = scale_vector(space, extension, alpha, row);
      for (const auto w : words) next.push_back(space.add(w, scaled));
    }
    words = std::move(next);
  }
  return words;
}

}  // namespace

ExplicitCode make_code(const CodeParams& params, std::vector<std::uint64_t> words) {
  if (words.empty()) throw std::invalid_argument("make_code: a code needs at least one word");
  const ExactInt size = params.space_size();
  for (const auto w : words) {
    if (w >= size) throw std::invalid_argument("make_code: word index outside the space");
  }
  return ExplicitCode{params, sorted_unique(std::move(words)), false, {}};
}

ExplicitCode make_code(const SumRankSpace& space, const std::vector<BlockVector>& words) {
  std::vector<std::uint64_t> indices;
  indices.reserve(words.size());
  for (const auto& w : words) indices.push_back(space.index_of(w));
  return make_code(space.params(), std::move(indices));
}

std::uint64_t scale_vector(const SumRankSpace& space, const FiniteField& extension,
                           FiniteField::Element scalar, std::uint64_t v) {
  const std::uint64_t qm = extension.order();
  std::uint64_t result = 0;
  std::uint64_t scale = 1;
  for (unsigned j = 0; j < space.params().n(); ++j) {
    const auto coordinate = static_cast<FiniteField::Element>(v % qm);
    result += scale * extension.mul(scalar, coordinate);
    v /= qm;
    scale *= qm;
  }
  return result;
}

ExplicitCode make_linear_code(const SumRankSpace& space, std::vector<std::uint64_t> generator) {
  const FiniteField extension = build_extension(space.field(), space.params().m());
  auto words = sorted_unique(span_of(space, extension, generator));
  const ExactInt expected = power(extension.order(), generator.size());
  if (ExactInt(words.size()) != expected) {
    throw std::invalid_argument("make_linear_code: generator rows are linearly dependent");
  }
  return ExplicitCode{space.params(), std::move(words), true, std::move(generator)};
}

unsigned min_distance(const ExplicitCode& code, const SearchBudget& budget) {
  if (code.size() < 2) throw std::invalid_argument("min_distance: code has fewer than two words");
  const SumRankSpace space(code.params, std::max<std::uint64_t>(budget.max_space_size, 1));
  unsigned best = std::numeric_limits<unsigned>::max();
  if (code.linear) {
    for (const auto w : code.codewords) {
      if (w != 0) best = std::min(best, space.weight(w));
    }
    return best;
  }
  const Deadline deadline(budget.time_cap_seconds);
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (i % 256 == 0) deadline.check("min_distance");
    for (std::size_t j = i + 1; j < code.size(); ++j) {
      best = std::min(best, space.distance(code.codewords[i], code.codewords[j]));
    }
  }
  return best;
}

std::vector<std::uint8_t> distances_to_code(const ExplicitCode& code, unsigned ell_prime,
                                            const SearchBudget& budget) {
  const CodeParams shape = code.params.reshaped(ell_prime);
  const SumRankSpace space(shape, budget.max_space_size);
  constexpr std::uint8_t kUnseen = std::numeric_limits<std::uint8_t>::max();
  std::vector<std::uint8_t> dist(space.size(), kUnseen);
  std::vector<std::uint64_t> frontier;
  for (const auto c : code.codewords) {
    dist[c] = 0;
    frontier.push_back(c);
  }
  const auto steps = space.unit_weight_vectors();
  for (std::uint8_t level = 1; !frontier.empty(); ++level) {
    std::vector<std::uint64_t> next;
    for (const auto v : frontier) {
      for (const auto s : steps) {
        const std::uint64_t w = space.add(v, s);
        if (dist[w] == kUnseen) {
          dist[w] = level;
          next.push_back(w);
        }
      }
    }
    frontier = std::move(next);
  }
  return dist;
}

unsigned covering_radius(const ExplicitCode& code, unsigned ell_prime, const SearchBudget& budget) {
  const auto dist = distances_to_code(code, ell_prime, budget);
  return *std::max_element(dist.begin(), dist.end());
}

namespace {

// Depth-first exact cover search with a fixed number of balls. Balls are
// symmetric (E = -E), so the centers covering x are exactly x + E.
class CoverSearch {
public:
  CoverSearch(const SumRankSpace& space, std::vector<std::uint64_t> offsets, const Deadline& deadline,
              std::uint64_t max_work)
      : space_(space), offsets_(std::move(offsets)), deadline_(deadline), max_work_(max_work),
        width_(offsets_.size()) {
    const std::uint64_t entries = space.size() * width_;
    if (entries <= (std::uint64_t{1} << 26)) {
      neighbours_.resize(entries);
      for (std::uint64_t x = 0; x < space.size(); ++x) {
        for (std::size_t e = 0; e < width_; ++e) {
          neighbours_[x * width_ + e] = static_cast<std::uint32_t>(space.add(x, offsets_[e]));
        }
      }
    }
  }

  std::optional<std::vector<std::uint64_t>> solve(std::uint64_t k) {
    count_.assign(space_.size(), 0);
    gain_.assign(space_.size(), static_cast<std::uint32_t>(width_));
    histogram_.assign(width_ + 1, 0);
    histogram_[width_] = space_.size();
    mark_.assign(space_.size(), 0);
    pool_.assign(k + 1, {});
    stamp_ = 0;
    depth_ = 0;
    uncovered_ = space_.size();
    chosen_.clear();
    place(0);
    chosen_.push_back(0);
    if (dfs(k - 1)) return chosen_;
    return std::nullopt;
  }

  std::uint64_t nodes() const { return nodes_; }
  std::uint64_t work() const { return work_; }

private:
  std::uint64_t neighbour(std::uint64_t x, std::size_t e) const {
    if (!neighbours_.empty()) return neighbours_[x * width_ + e];
    return space_.add(x, offsets_[e]);
  }

  void shift_gains(std::uint64_t x, int delta) {
    work_ += width_;
    for (std::size_t e = 0; e < width_; ++e) {
      const std::uint64_t c = neighbour(x, e);
      --histogram_[gain_[c]];
      gain_[c] += delta;
      ++histogram_[gain_[c]];
    }
  }

  void place(std::uint64_t c) {
    for (std::size_t e = 0; e < width_; ++e) {
      const std::uint64_t x = neighbour(c, e);
      if (count_[x]++ == 0) {
        --uncovered_;
        shift_gains(x, -1);
      }
    }
  }

  void unplace(std::uint64_t c) {
    for (std::size_t e = 0; e < width_; ++e) {
      const std::uint64_t x = neighbour(c, e);
      if (--count_[x] == 0) {
        ++uncovered_;
        shift_gains(x, +1);
      }
    }
  }

  void check_budget() const {
    if (max_work_ != 0 && work_ > max_work_) {
      throw BudgetExceeded("exhaustive_min_covering: work budget of " + std::to_string(max_work_) +
                           " gain updates exhausted");
    }
    deadline_.check("exhaustive_min_covering");
  }

  // Sum of the `r` largest gains over all centers.
  std::uint64_t best_gains(std::uint64_t r) const {
    std::uint64_t total = 0;
    for (std::size_t g = width_; g > 0 && r > 0; --g) {
      const std::uint64_t take = std::min<std::uint64_t>(r, histogram_[g]);
      total += take * g;
      r -= take;
    }
    return total;
  }

  bool dfs(std::uint64_t remaining) {
    if (uncovered_ == 0) return true;
    if (remaining == 0) return false;
    if (best_gains(remaining) < uncovered_) return false;
    ++nodes_;
    work_ += width_;
    check_budget();

    std::uint64_t x = 0;
    while (count_[x] != 0) ++x;

    auto& candidates = pool_[depth_];
    candidates.clear();
    for (std::size_t e = 0; e < width_; ++e) {
      const std::uint64_t c = neighbour(x, e);
      candidates.push_back({c, gain_[c], false});
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
      if (a.gain != b.gain) return a.gain > b.gain;
      return a.center < b.center;
    });
    // Gains only shrink further down, so the current ones bound the next level.
    const std::uint64_t rest = remaining > 1 ? best_gains(remaining - 1) : 0;
    std::size_t viable = 0;
    while (viable < candidates.size() && uncovered_ <= candidates[viable].gain + rest) ++viable;
    candidates.resize(viable);
    if (width_ <= kDominanceLimit) mark_dominated(candidates);

    ++depth_;
    for (const auto& candidate : candidates) {
      if (candidate.dominated) continue;
      place(candidate.center);
      check_budget();
      chosen_.push_back(candidate.center);
      if (dfs(remaining - 1)) {
        --depth_;
        return true;
      }
      chosen_.pop_back();
      unplace(candidate.center);
    }
    --depth_;
    return false;
  }

  struct Candidate {
    std::uint64_t center;
    std::uint32_t gain;
    bool dominated;
  };

  // A center whose new coverage lies inside an earlier candidate's ball is
  // dominated by it.
  void mark_dominated(std::vector<Candidate>& candidates) {
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      if (candidates[j].dominated) continue;
      ++stamp_;
      for (std::size_t e = 0; e < width_; ++e) mark_[neighbour(candidates[j].center, e)] = stamp_;
      for (std::size_t i = j + 1; i < candidates.size(); ++i) {
        if (candidates[i].dominated) continue;
        bool inside = true;
        for (std::size_t e = 0; e < width_ && inside; ++e) {
          const std::uint64_t y = neighbour(candidates[i].center, e);
          inside = count_[y] != 0 || mark_[y] == stamp_;
        }
        candidates[i].dominated = inside;
      }
    }
  }

  static constexpr std::size_t kDominanceLimit = 256;

  const SumRankSpace& space_;
  std::vector<std::uint64_t> offsets_;
  const Deadline& deadline_;
  std::uint64_t max_work_;
  std::size_t width_;
  std::vector<std::uint32_t> neighbours_;
  std::vector<std::uint16_t> count_;
  std::vector<std::uint32_t> gain_;
  std::vector<std::uint64_t> histogram_;
  std::uint64_t uncovered_ = 0;
  std::vector<std::uint64_t> chosen_;
  std::vector<std::vector<Candidate>> pool_;
  std::size_t depth_ = 0;
  std::vector<std::uint32_t> mark_;
  std::uint32_t stamp_ = 0;
  std::uint64_t nodes_ = 0;
  std::uint64_t work_ = 0;
};

ExplicitCode full_space_code(const CodeParams& params, std::uint64_t size) {
  std::vector<std::uint64_t> all(size);
  std::iota(all.begin(), all.end(), 0);
  return make_code(params, std::move(all));
}

// Radii above mu*ell are allowed (K = 1) so regrouped shapes can reuse rho.
void require_rho(std::int64_t rho, const char* what) {
  if (rho < 0) throw RangeError(std::string(what) + ": rho must be nonnegative");
}

}  // namespace

CoveringResult exhaustive_min_covering(const CodeParams& params, std::int64_t rho,
                                       const SearchBudget& budget) {
  require_rho(rho, "exhaustive_min_covering");
  require_space(params, budget.max_space_size, "exhaustive_min_covering");
  if (rho >= static_cast<std::int64_t>(params.max_weight())) {
    return {1, make_code(params, {0}), 0};
  }
  const SumRankSpace space(params, budget.max_space_size);
  if (rho == 0) return {ExactInt(space.size()), full_space_code(params, space.size()), 0};

  const Deadline deadline(budget.time_cap_seconds);
  const CoveringResult greedy = greedy_min_covering(params, rho, budget);
  const auto greedy_size = greedy.size.convert_to<std::uint64_t>();
  auto offsets = space.ball_offsets(static_cast<unsigned>(rho));
  const std::uint64_t ball = offsets.size();
  CoverSearch search(space, std::move(offsets), deadline, budget.max_work);
  for (std::uint64_t k = (space.size() + ball - 1) / ball; k < greedy_size; ++k) {
    if (auto found = search.solve(k)) {
      return {ExactInt(k), make_code(params, std::move(*found)), search.nodes(), search.work()};
    }
  }
  return {greedy.size, greedy.witness, search.nodes(), search.work()};
}

CoveringResult greedy_min_covering(const CodeParams& params, std::int64_t rho,
                                   const SearchBudget& budget) {
  require_rho(rho, "greedy_min_covering");
  require_space(params, budget.max_space_size, "greedy_min_covering");
  if (rho >= static_cast<std::int64_t>(params.max_weight())) {
    return {1, make_code(params, {0}), 0};
  }
  const SumRankSpace space(params, budget.max_space_size);
  const Deadline deadline(budget.time_cap_seconds);
  const auto offsets = space.ball_offsets(static_cast<unsigned>(rho));
  std::vector<bool> covered(space.size(), false);
  std::uint64_t uncovered = space.size();
  // Exact new coverage per center; balls are symmetric, so covering x lowers
  // the gain of every center in x + E.
  std::vector<std::uint32_t> gain(space.size(), static_cast<std::uint32_t>(offsets.size()));

  // Max-heap on (gain, -center); stale entries are refreshed when popped.
  using Entry = std::pair<std::uint64_t, std::int64_t>;
  std::priority_queue<Entry> heap;
  for (std::uint64_t c = 0; c < space.size(); ++c) heap.push({offsets.size(), -static_cast<std::int64_t>(c)});

  std::vector<std::uint64_t> chosen;
  std::uint64_t steps = 0;
  while (uncovered > 0) {
    if (++steps % 4096 == 0) deadline.check("greedy_min_covering");
    const auto [stored, neg_center] = heap.top();
    heap.pop();
    const auto c = static_cast<std::uint64_t>(-neg_center);
    if (gain[c] != stored) {
      if (gain[c] > 0) heap.push({gain[c], neg_center});
      continue;
    }
    chosen.push_back(c);
    for (const auto e : offsets) {
      const std::uint64_t x = space.add(c, e);
      if (covered[x]) continue;
      covered[x] = true;
      --uncovered;
      for (const auto f : offsets) --gain[space.add(x, f)];
    }
    deadline.check("greedy_min_covering");
  }
  return {ExactInt(chosen.size()), make_code(params, std::move(chosen)), steps};
}

CoveringResult exhaustive_min_linear_covering(const CodeParams& params, std::int64_t rho,
                                              const SearchBudget& budget) {
  require_rho(rho, "exhaustive_min_linear_covering");
  require_space(params, budget.max_space_size, "exhaustive_min_linear_covering");
  const SumRankSpace space(params, budget.max_space_size);
  const FiniteField extension = build_extension(space.field(), params.m());
  const Deadline deadline(budget.time_cap_seconds);
  const unsigned n = params.n();
  const std::uint64_t qm = extension.order();
  std::uint64_t nodes = 0;

  auto unit = [&](unsigned column, FiniteField::Element value) {
    std::uint64_t v = value;
    for (unsigned j = 0; j < column; ++j) v *= qm;
    return v;
  };

  for (unsigned k = 0; k <= n; ++k) {
    // Pivot columns as a k-subset of [0, n).
    std::vector<unsigned> pivots(k);
    std::iota(pivots.begin(), pivots.end(), 0u);
    while (true) {
      // Free positions: (row i, column j) with j > pivots[i] and j not a pivot.
      std::vector<std::pair<unsigned, unsigned>> free_slots;
      for (unsigned i = 0; i < k; ++i) {
        for (unsigned j = pivots[i] + 1; j < n; ++j) {
          if (std::find(pivots.begin(), pivots.end(), j) == pivots.end()) free_slots.emplace_back(i, j);
        }
      }
      std::vector<FiniteField::Element> values(free_slots.size(), 0);
      while (true) {
        if (++nodes % 64 == 0) deadline.check("exhaustive_min_linear_covering");
        std::vector<std::uint64_t> rows(k);
        for (unsigned i = 0; i < k; ++i) rows[i] = unit(pivots[i], 1);
        for (std::size_t s = 0; s < free_slots.size(); ++s) {
          rows[free_slots[s].first] =
              space.add(rows[free_slots[s].first], unit(free_slots[s].second, values[s]));
        }
        ExplicitCode code{params, sorted_unique(span_of(space, extension, rows)), true, rows};
        if (static_cast<std::int64_t>(covering_radius(code, params.ell(), budget)) <= rho) {
          return {power(qm, k), std::move(code), nodes};
        }
        // Next assignment of free entries.
        std::size_t s = 0;
        while (s < values.size() && ++values[s] == qm) values[s++] = 0;
        if (s == values.size()) break;
      }
      // Next pivot subset in lexicographic order.
      int i = static_cast<int>(k) - 1;
      while (i >= 0 && pivots[i] == n - k + i) --i;
      if (i < 0) break;
      ++pivots[i];
      for (unsigned j = i + 1; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
    }
  }
  throw std::logic_error("exhaustive_min_linear_covering: the full space always covers");
}

bool is_msrd(const ExplicitCode& code, const SearchBudget& budget) {
  if (!code.linear) throw std::invalid_argument("is_msrd: code must be linear");
  const auto d = static_cast<std::int64_t>(min_distance(code, budget));
  return d == singleton_max_distance(code.params, code.dimension());
}

std::vector<ExactInt> brute_weight_distribution(const CodeParams& params, std::uint64_t cap) {
  const SumRankSpace space(params, cap);
  std::vector<std::uint64_t> counts(params.max_weight() + 1, 0);
  for (std::uint64_t v = 0; v < space.size(); ++v) ++counts[space.weight(v)];
  return {counts.begin(), counts.end()};
}

ExactInt brute_sphere_volume(const CodeParams& params, std::int64_t t, std::uint64_t cap) {
  const auto counts = brute_weight_distribution(params, cap);
  if (t < 0 || t >= static_cast<std::int64_t>(counts.size())) return 0;
  return counts[static_cast<std::size_t>(t)];
}

ExactInt brute_ball_volume(const CodeParams& params, std::int64_t t, std::uint64_t cap) {
  const auto counts = brute_weight_distribution(params, cap);
  ExactInt total = 0;
  for (std::int64_t i = 0; i <= t && i < static_cast<std::int64_t>(counts.size()); ++i) {
    total += counts[static_cast<std::size_t>(i)];
  }
  return total;
}

ExactInt brute_intersection_volume(const CodeParams& params, std::int64_t tau,
                                   const WeightDistribution& dist, std::uint64_t cap) {
  const SumRankSpace space(params, cap);
  const std::uint64_t center = space.index_of(canonical_center(params, dist));
  std::uint64_t count = 0;
  for (std::uint64_t y = 0; y < space.size(); ++y) {
    if (static_cast<std::int64_t>(space.weight(y)) <= tau &&
        static_cast<std::int64_t>(space.distance(y, center)) <= tau) {
      ++count;
    }
  }
  return count;
}

}  // namespace sumrank

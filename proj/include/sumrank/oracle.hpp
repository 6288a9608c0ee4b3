#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "sumrank/exact.hpp"
#include "sumrank/finite_field.hpp"
#include "sumrank/geometry.hpp"
#include "sumrank/params.hpp"
#include "sumrank/space.hpp"

namespace sumrank {

struct SearchBudget {
  std::uint64_t max_space_size = std::uint64_t{1} << 16;
  double time_cap_seconds = 300.0;
  // Cap on elementary gain updates in exhaustive_min_covering; 0 means none.
  // Tracks running time closely but, unlike the time cap, gives the same
  // outcome on every machine.
  std::uint64_t max_work = 0;
};

/// Explicit code over F_{q^m}^n. Codewords are SumRankSpace indices, kept
/// sorted and unique. For linear codes `generator` is an F_{q^m}-basis and the
/// codeword set is its span.
struct ExplicitCode {
  CodeParams params;
  std::vector<std::uint64_t> codewords;
  bool linear = false;
  std::vector<std::uint64_t> generator;

  std::size_t size() const { return codewords.size(); }
  unsigned dimension() const { return static_cast<unsigned>(generator.size()); }
};

// Throws std::invalid_argument on an empty word list.
ExplicitCode make_code(const CodeParams& params, std::vector<std::uint64_t> words);
ExplicitCode make_code(const SumRankSpace& space, const std::vector<BlockVector>& words);
// Span over F_{q^m} of the generator rows; throws if they are dependent.
ExplicitCode make_linear_code(const SumRankSpace& space, std::vector<std::uint64_t> generator);

// Scalar multiplication by an F_{q^m} element (given in F_q-coordinates).
std::uint64_t scale_vector(const SumRankSpace& space, const FiniteField& extension,
                           FiniteField::Element scalar, std::uint64_t v);

// Minimum weight of a nonzero codeword (linear) or minimum pairwise distance.
// A single-word code has no distance; throws std::invalid_argument.
unsigned min_distance(const ExplicitCode& code, const SearchBudget& budget = {});

// Distance from every vector to the code under `ell_prime` blocks (ell_prime
// must divide n). Multi-source breadth-first search over weight-one steps.
std::vector<std::uint8_t> distances_to_code(const ExplicitCode& code, unsigned ell_prime,
                                            const SearchBudget& budget = {});
unsigned covering_radius(const ExplicitCode& code, unsigned ell_prime,
                         const SearchBudget& budget = {});
inline unsigned covering_radius(const ExplicitCode& code, const SearchBudget& budget = {}) {
  return covering_radius(code, code.params.ell(), budget);
}

struct CoveringResult {
  ExactInt size;
  ExplicitCode witness;
  std::uint64_t nodes = 0;
  std::uint64_t work = 0;
};

// Least number of radius-rho balls covering the space, over arbitrary codes.
// Iterative deepening on the code size from the ball-count bound, each level
// a depth-first search that covers the lowest uncovered vector, fixes the
// zero word (translation invariance) and skips dominated centers.
// Throws BudgetExceeded when q^{mn} > budget.max_space_size or time runs out.
CoveringResult exhaustive_min_covering(const CodeParams& params, std::int64_t rho,
                                       const SearchBudget& budget = {});

// Greedy set cover (largest new coverage, lowest index on ties).
CoveringResult greedy_min_covering(const CodeParams& params, std::int64_t rho,
                                   const SearchBudget& budget = {kDefaultEnumerationCap, 300.0, 0});

// Least size of a covering code among F_{q^m}-linear codes, by enumerating
// subspaces in reduced row echelon form.
CoveringResult exhaustive_min_linear_covering(const CodeParams& params, std::int64_t rho,
                                              const SearchBudget& budget = {});

// Linear code meeting the Singleton bound with equality.
bool is_msrd(const ExplicitCode& code, const SearchBudget& budget = {});

// Number of vectors of each weight 0..mu*ell, by full enumeration.
std::vector<ExactInt> brute_weight_distribution(const CodeParams& params,
                                                std::uint64_t cap = kDefaultEnumerationCap);
ExactInt brute_sphere_volume(const CodeParams& params, std::int64_t t,
                             std::uint64_t cap = kDefaultEnumerationCap);
ExactInt brute_ball_volume(const CodeParams& params, std::int64_t t,
                           std::uint64_t cap = kDefaultEnumerationCap);
// Full enumeration of q^{mn} vectors against canonical_center(dist).
ExactInt brute_intersection_volume(const CodeParams& params, std::int64_t tau,
                                   const WeightDistribution& dist,
                                   std::uint64_t cap = kDefaultEnumerationCap);

// Text format: header line "q m eta ell", then one codeword per line. Each
// block is its m*eta base-field digits in row-major order, every digit as a
// fixed-width lowercase hex number (width = hex digits of q-1), and blocks
// are separated by '|'.
void write_code(std::ostream& out, const ExplicitCode& code);
// Throws std::runtime_error on malformed input.
ExplicitCode read_code(std::istream& in);

}  // namespace sumrank

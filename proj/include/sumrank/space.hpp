#pragma once

#include <cstdint>
#include <vector>

#include "sumrank/finite_field.hpp"
#include "sumrank/params.hpp"

namespace sumrank {

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 24;

/// Vector of F_{q^m}^n in matrix representation: ell blocks, each an
/// m x eta matrix over F_q whose column j holds the F_q-coordinates of the
/// j-th F_{q^m} entry of the block.
struct BlockVector {
  std::vector<Matrix> blocks;

  friend bool operator==(const BlockVector&, const BlockVector&) = default;
};

/// Enumerated m x eta matrices over F_q, indexed by integers in [0, q^{m*eta}).
///
/// Index layout: digit j (base q) is entry (j % m, j / m), so column c is the
/// base-q^m digit c of the index. Ranks come from Gaussian elimination.
class BlockTables {
public:
  // Throws BudgetExceeded when q^{m*eta} > cap.
  BlockTables(const FiniteField& field, unsigned m, unsigned eta,
              std::uint64_t cap = kDefaultEnumerationCap);

  std::uint64_t size() const { return size_; }
  unsigned rank(std::uint64_t block) const { return ranks_[block]; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;

  Matrix to_matrix(std::uint64_t block) const;
  std::uint64_t index_of(const Matrix& matrix) const;

private:
  const FiniteField* field_;
  unsigned m_;
  unsigned eta_;
  std::uint64_t size_;
  std::vector<std::uint8_t> ranks_;
};

/// Whole space F_{q^m}^n enumerated as integers in [0, q^{mn}).
///
/// Block i occupies base-q^{m*eta} digit i of the index, so regrouping the
/// same vector into a different number of blocks keeps its index unchanged.
class SumRankSpace {
public:
  // Throws BudgetExceeded when q^{mn} > max_space_size.
  explicit SumRankSpace(const CodeParams& params,
                        std::uint64_t max_space_size = kDefaultEnumerationCap);

  SumRankSpace(const SumRankSpace&) = delete;
  SumRankSpace& operator=(const SumRankSpace&) = delete;

  const CodeParams& params() const { return params_; }
  const FiniteField& field() const { return field_; }
  const BlockTables& blocks() const { return blocks_; }
  std::uint64_t size() const { return size_; }

  std::uint64_t block(std::uint64_t v, unsigned i) const;
  std::uint64_t add(std::uint64_t u, std::uint64_t v) const;
  std::uint64_t sub(std::uint64_t u, std::uint64_t v) const;

  unsigned weight(std::uint64_t v) const;
  unsigned distance(std::uint64_t u, std::uint64_t v) const { return weight(sub(u, v)); }

  // Vectors of weight exactly 1: one block of rank one, all others zero.
  // Sum-rank distance is the shortest-path distance for these generators.
  std::vector<std::uint64_t> unit_weight_vectors() const;
  // All vectors of weight <= radius, in increasing index order.
  std::vector<std::uint64_t> ball_offsets(unsigned radius) const;

  BlockVector to_block_vector(std::uint64_t v) const;
  std::uint64_t index_of(const BlockVector& v) const;

private:
  CodeParams params_;
  FiniteField field_;
  BlockTables blocks_;
  std::uint64_t size_;
  std::uint64_t block_size_;
  unsigned digits_;
  bool binary_char_;
  // Odd characteristic: an index is a base-p number (each F_q digit is its
  // base-p coefficient vector), so addition is digitwise mod p. These tables
  // add and negate chunks of chunk_digits_ base-p digits at once.
  std::uint64_t chunk_ = 0;
  unsigned chunks_ = 0;
  std::vector<std::uint16_t> chunk_add_;
  std::vector<std::uint16_t> chunk_neg_;
};

unsigned sum_rank_weight(const FiniteField& field, const BlockVector& v);

}  // namespace sumrank

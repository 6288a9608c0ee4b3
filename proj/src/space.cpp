#include "sumrank/space.hpp"

#include <stdexcept>
#include <string>

#include "sumrank/errors.hpp"

namespace sumrank {

namespace {

std::uint64_t checked_size(std::uint64_t q, std::uint64_t exponent, std::uint64_t cap,
                           const char* what) {
  const ExactInt size = power(q, exponent);
  if (size > cap) {
    throw BudgetExceeded(std::string(what) + ": " + size.str() + " elements exceed cap " +
                         std::to_string(cap));
  }
  return size.convert_to<std::uint64_t>();
}

// Digit-wise addition of two base-q integers with `digits` digits.
std::uint64_t add_digits(const FiniteField& field, std::uint64_t a, std::uint64_t b,
                         unsigned digits, bool negate_b) {
  const std::uint64_t q = field.order();
  std::uint64_t result = 0;
  std::uint64_t scale = 1;
  for (unsigned i = 0; i < digits; ++i) {
    const auto da = static_cast<FiniteField::Element>(a % q);
    auto db = static_cast<FiniteField::Element>(b % q);
    if (negate_b) db = field.neg(db);
    result += scale * field.add(da, db);
    a /= q;
    b /= q;
    scale *= q;
  }
  return result;
}

constexpr std::uint64_t kChunkLimit = 1024;

}  // namespace

BlockTables::BlockTables(const FiniteField& field, unsigned m, unsigned eta, std::uint64_t cap)
    : field_(&field), m_(m), eta_(eta),
      size_(checked_size(field.order(), std::uint64_t{m} * eta, cap, "block enumeration")) {
  ranks_.resize(size_);
  for (std::uint64_t b = 0; b < size_; ++b) {
    ranks_[b] = static_cast<std::uint8_t>(rank_over_base(field, to_matrix(b)));
  }
}

std::uint64_t BlockTables::add(std::uint64_t a, std::uint64_t b) const {
  if (field_->characteristic() == 2) return a ^ b;
  return add_digits(*field_, a, b, m_ * eta_, false);
}

std::uint64_t BlockTables::sub(std::uint64_t a, std::uint64_t b) const {
  if (field_->characteristic() == 2) return a ^ b;
  return add_digits(*field_, a, b, m_ * eta_, true);
}

Matrix BlockTables::to_matrix(std::uint64_t block) const {
  Matrix matrix(m_, eta_);
  const std::uint64_t q = field_->order();
  for (unsigned j = 0; j < m_ * eta_; ++j) {
    matrix.at(j % m_, j / m_) = static_cast<FiniteField::Element>(block % q);
    block /= q;
  }
  return matrix;
}

std::uint64_t BlockTables::index_of(const Matrix& matrix) const {
  if (matrix.rows != m_ || matrix.cols != eta_) {
    throw std::invalid_argument("BlockTables::index_of: matrix shape mismatch");
  }
  std::uint64_t index = 0;
  for (unsigned j = m_ * eta_; j-- > 0;) index = index * field_->order() + matrix.at(j % m_, j / m_);
  return index;
}

SumRankSpace::SumRankSpace(const CodeParams& params, std::uint64_t max_space_size)
    : params_(params),
      field_(field_of_order(params.q())),
      blocks_(field_, params.m(), params.eta(), max_space_size),
      size_(checked_size(params.q(), std::uint64_t{params.m()} * params.n(), max_space_size,
                         "space enumeration")),
      block_size_(blocks_.size()),
      digits_(params.m() * params.n()),
      binary_char_(field_.characteristic() == 2) {
  if (binary_char_) return;
  const std::uint64_t p = field_.characteristic();
  const unsigned total = digits_ * field_.degree();
  unsigned per_chunk = 1;
  chunk_ = p;
  while (chunk_ * p <= kChunkLimit && per_chunk < total) {
    chunk_ *= p;
    ++per_chunk;
  }
  if (chunk_ * chunk_ > kChunkLimit * kChunkLimit) {
    chunk_ = 0;  // large prime: per-digit arithmetic
    return;
  }
  chunks_ = (total + per_chunk - 1) / per_chunk;
  chunk_add_.resize(chunk_ * chunk_);
  chunk_neg_.resize(chunk_);
  // Lowest digit directly, the rest from the entry for (a/p, b/p), which
  // comes earlier in this order.
  for (std::uint64_t a = 0; a < chunk_; ++a) {
    chunk_neg_[a] = static_cast<std::uint16_t>((p - a % p) % p + p * chunk_neg_[a / p]);
    for (std::uint64_t b = 0; b < chunk_; ++b) {
      const std::uint64_t high = a < p && b < p ? 0 : chunk_add_[(a / p) * chunk_ + b / p];
      chunk_add_[a * chunk_ + b] = static_cast<std::uint16_t>((a % p + b % p) % p + p * high);
    }
  }
}

std::uint64_t SumRankSpace::block(std::uint64_t v, unsigned i) const {
  for (unsigned k = 0; k < i; ++k) v /= block_size_;
  return v % block_size_;
}

std::uint64_t SumRankSpace::add(std::uint64_t u, std::uint64_t v) const {
  if (binary_char_) return u ^ v;
  if (chunk_ == 0) return add_digits(field_, u, v, digits_, false);
  std::uint64_t result = 0;
  for (std::uint64_t i = 0, scale = 1; i < chunks_; ++i, scale *= chunk_, u /= chunk_, v /= chunk_) {
    result += scale * chunk_add_[(u % chunk_) * chunk_ + v % chunk_];
  }
  return result;
}

std::uint64_t SumRankSpace::sub(std::uint64_t u, std::uint64_t v) const {
  if (binary_char_) return u ^ v;
  if (chunk_ == 0) return add_digits(field_, u, v, digits_, true);
  std::uint64_t result = 0;
  for (std::uint64_t i = 0, scale = 1; i < chunks_; ++i, scale *= chunk_, u /= chunk_, v /= chunk_) {
    result += scale * chunk_add_[(u % chunk_) * chunk_ + chunk_neg_[v % chunk_]];
  }
  return result;
}

unsigned SumRankSpace::weight(std::uint64_t v) const {
  unsigned w = 0;
  for (unsigned i = 0; i < params_.ell(); ++i) {
    w += blocks_.rank(v % block_size_);
    v /= block_size_;
  }
  return w;
}

std::vector<std::uint64_t> SumRankSpace::unit_weight_vectors() const {
  std::vector<std::uint64_t> result;
  std::uint64_t scale = 1;
  for (unsigned i = 0; i < params_.ell(); ++i) {
    for (std::uint64_t b = 1; b < block_size_; ++b) {
      if (blocks_.rank(b) == 1) result.push_back(b * scale);
    }
    scale *= block_size_;
  }
  return result;
}

std::vector<std::uint64_t> SumRankSpace::ball_offsets(unsigned radius) const {
  std::vector<std::uint64_t> result;
  for (std::uint64_t v = 0; v < size_; ++v) {
    if (weight(v) <= radius) result.push_back(v);
  }
  return result;
}

BlockVector SumRankSpace::to_block_vector(std::uint64_t v) const {
  BlockVector result;
  for (unsigned i = 0; i < params_.ell(); ++i) {
    result.blocks.push_back(blocks_.to_matrix(v % block_size_));
    v /= block_size_;
  }
  return result;
}

std::uint64_t SumRankSpace::index_of(const BlockVector& v) const {
  if (v.blocks.size() != params_.ell()) {
    throw std::invalid_argument("SumRankSpace::index_of: wrong number of blocks");
  }
  std::uint64_t index = 0;
  for (unsigned i = params_.ell(); i-- > 0;) index = index * block_size_ + blocks_.index_of(v.blocks[i]);
  return index;
}

unsigned sum_rank_weight(const FiniteField& field, const BlockVector& v) {
  unsigned w = 0;
  for (const auto& block : v.blocks) w += rank_over_base(field, block);
  return w;
}

}  // namespace sumrank

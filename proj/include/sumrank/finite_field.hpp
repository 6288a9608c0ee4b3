#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace sumrank {

/// Finite field represented as polynomials modulo a fixed irreducible.
///
/// An element is the integer sum c_i * B^i of its coefficient digits, where
/// B is the order of the coefficient field (the prime p for build_field, or
/// the base field order for build_extension). Zero is 0 and one is 1.
/// Fields of order <= 256 use precomputed add/mul/inverse tables.
class FiniteField {
public:
  using Element = std::uint32_t;

  std::uint64_t order() const { return order_; }
  std::uint64_t characteristic() const { return characteristic_; }
  std::uint64_t coefficient_order() const { return coeff_order_; }
  unsigned degree() const { return degree_; }
  // Non-leading coefficients of the monic modulus, constant term first.
  const std::vector<Element>& modulus() const { return modulus_; }
  bool has_tables() const { return !mul_table_.empty(); }

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const;
  // Throws std::domain_error for a == 0.
  Element inv(Element a) const;

  // Same operations without the tables; used to cross-check them.
  Element add_slow(Element a, Element b) const;
  Element mul_slow(Element a, Element b) const;

private:
  friend FiniteField build_field(std::uint64_t p, unsigned s);
  friend FiniteField build_extension(const FiniteField& base, unsigned degree);

  FiniteField() = default;
  void init(std::vector<Element> modulus);

  Element coeff_add(Element a, Element b) const;
  Element coeff_sub(Element a, Element b) const;
  Element coeff_mul(Element a, Element b) const;
  std::vector<Element> digits(Element a) const;
  Element from_digits(const std::vector<Element>& d) const;

  std::shared_ptr<const FiniteField> base_;  // null: coefficients are Z_p
  std::uint64_t characteristic_ = 0;
  std::uint64_t coeff_order_ = 0;
  unsigned degree_ = 0;
  std::uint64_t order_ = 0;
  std::vector<Element> modulus_;
  std::vector<Element> add_table_;
  std::vector<Element> mul_table_;
  std::vector<Element> inv_table_;
};

// F_{p^s} over the prime field. The modulus is the irreducible monic degree-s
// polynomial whose lower coefficients, read as a base-p integer with the
// constant term least significant, are smallest.
// Throws std::invalid_argument unless p is prime, s >= 1 and p^s <= 2^16.
FiniteField build_field(std::uint64_t p, unsigned s);

// F_{Q^degree} as an extension of `base` (order Q), modulus chosen as above.
FiniteField build_extension(const FiniteField& base, unsigned degree);

// Field with q elements for a prime power q.
FiniteField field_of_order(std::uint64_t q);

/// Dense row-major matrix over a finite field.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<FiniteField::Element> entries;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, 0) {}

  FiniteField::Element& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
  FiniteField::Element at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

unsigned rank_over_base(const FiniteField& field, Matrix matrix);

}  // namespace sumrank

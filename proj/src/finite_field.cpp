#include "sumrank/finite_field.hpp"

#include <stdexcept>
#include <utility>

#include "sumrank/exact.hpp"

namespace sumrank {

namespace {

using Element = FiniteField::Element;
using Poly = std::vector<Element>;  // coefficients, constant term first

constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 16;
constexpr std::uint64_t kTableOrder = 256;

}  // namespace

Element FiniteField::coeff_add(Element a, Element b) const {
  if (base_) return base_->add(a, b);
  return static_cast<Element>((std::uint64_t{a} + b) % characteristic_);
}

Element FiniteField::coeff_sub(Element a, Element b) const {
  if (base_) return base_->sub(a, b);
  return static_cast<Element>((std::uint64_t{a} + characteristic_ - b) % characteristic_);
}

Element FiniteField::coeff_mul(Element a, Element b) const {
  if (base_) return base_->mul(a, b);
  return static_cast<Element>((std::uint64_t{a} * b) % characteristic_);
}

std::vector<Element> FiniteField::digits(Element a) const {
  std::vector<Element> d(degree_);
  for (unsigned i = 0; i < degree_; ++i) {
    d[i] = static_cast<Element>(a % coeff_order_);
    a = static_cast<Element>(a / coeff_order_);
  }
  return d;
}

Element FiniteField::from_digits(const std::vector<Element>& d) const {
  std::uint64_t value = 0;
  for (unsigned i = degree_; i-- > 0;) value = value * coeff_order_ + d[i];
  return static_cast<Element>(value);
}

Element FiniteField::add_slow(Element a, Element b) const {
  auto da = digits(a);
  const auto db = digits(b);
  for (unsigned i = 0; i < degree_; ++i) da[i] = coeff_add(da[i], db[i]);
  return from_digits(da);
}

Element FiniteField::mul_slow(Element a, Element b) const {
  const auto da = digits(a);
  const auto db = digits(b);
  Poly prod(2 * degree_ - 1, 0);
  for (unsigned i = 0; i < degree_; ++i) {
    if (da[i] == 0) continue;
    for (unsigned j = 0; j < degree_; ++j) {
      prod[i + j] = coeff_add(prod[i + j], coeff_mul(da[i], db[j]));
    }
  }
  // x^degree = -sum modulus_i x^i
  for (std::size_t k = prod.size(); k-- > degree_;) {
    const Element c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (unsigned i = 0; i < degree_; ++i) {
      prod[k - degree_ + i] = coeff_sub(prod[k - degree_ + i], coeff_mul(c, modulus_[i]));
    }
  }
  prod.resize(degree_);
  return from_digits(prod);
}

Element FiniteField::add(Element a, Element b) const {
  if (!add_table_.empty()) return add_table_[a * order_ + b];
  return add_slow(a, b);
}

Element FiniteField::neg(Element a) const {
  auto d = digits(a);
  for (auto& c : d) c = coeff_sub(0, c);
  return from_digits(d);
}

Element FiniteField::sub(Element a, Element b) const { return add(a, neg(b)); }

Element FiniteField::mul(Element a, Element b) const {
  if (!mul_table_.empty()) return mul_table_[a * order_ + b];
  return mul_slow(a, b);
}

Element FiniteField::inv(Element a) const {
  if (a == 0) throw std::domain_error("FiniteField: zero has no inverse");
  if (!inv_table_.empty()) return inv_table_[a];
  // a^(order-2)
  Element result = 1;
  Element base = a;
  for (std::uint64_t e = order_ - 2; e != 0; e >>= 1u) {
    if (e & 1u) result = mul(result, base);
    base = mul(base, base);
  }
  return result;
}

void FiniteField::init(std::vector<Element> modulus) {
  modulus_ = std::move(modulus);
  if (order_ > kTableOrder) return;
  const auto q = static_cast<Element>(order_);
  add_table_.resize(order_ * order_);
  std::vector<Element> mul_table(order_ * order_);
  for (Element a = 0; a < q; ++a) {
    for (Element b = 0; b < q; ++b) {
      add_table_[a * q + b] = add_slow(a, b);
      mul_table[a * q + b] = mul_slow(a, b);
    }
  }
  inv_table_.assign(order_, 0);
  for (Element a = 1; a < q; ++a) {
    for (Element b = 1; b < q; ++b) {
      if (mul_table[a * q + b] == 1) inv_table_[a] = b;
    }
  }
  mul_table_ = std::move(mul_table);
}

namespace {

// Coefficient-field operations needed by the modulus search, abstracted so
// the same search works over Z_p and over an arbitrary base field.
struct CoeffOps {
  std::uint64_t order;
  std::uint64_t p;
  const FiniteField* base;

  Element add(Element a, Element b) const {
    return base ? base->add(a, b) : static_cast<Element>((std::uint64_t{a} + b) % p);
  }
  Element sub(Element a, Element b) const {
    return base ? base->sub(a, b) : static_cast<Element>((std::uint64_t{a} + p - b) % p);
  }
  Element mul(Element a, Element b) const {
    return base ? base->mul(a, b) : static_cast<Element>((std::uint64_t{a} * b) % p);
  }
};

// Monic polynomial of the given degree whose lower coefficients encode `code`.
Poly monic_from_code(std::uint64_t code, unsigned degree, std::uint64_t order) {
  Poly f(degree + 1, 0);
  for (unsigned i = 0; i < degree; ++i) {
    f[i] = static_cast<Element>(code % order);
    code /= order;
  }
  f[degree] = 1;
  return f;
}

// True when monic g divides f.
bool divides(const CoeffOps& ops, const Poly& g, Poly f) {
  const std::size_t dg = g.size() - 1;
  for (std::size_t k = f.size(); k-- > dg;) {
    const Element c = f[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dg; ++i) {
      f[k - dg + i] = ops.sub(f[k - dg + i], ops.mul(c, g[i]));
    }
  }
  for (std::size_t i = 0; i < dg; ++i) {
    if (f[i] != 0) return false;
  }
  return true;
}

bool is_irreducible(const CoeffOps& ops, const Poly& f) {
  const unsigned degree = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= degree / 2; ++d) {
    const std::uint64_t count = power(ops.order, d).convert_to<std::uint64_t>();
    for (std::uint64_t code = 0; code < count; ++code) {
      if (divides(ops, monic_from_code(code, d, ops.order), f)) return false;
    }
  }
  return true;
}

std::vector<Element> lowest_irreducible(const CoeffOps& ops, unsigned degree) {
  const std::uint64_t count = power(ops.order, degree).convert_to<std::uint64_t>();
  for (std::uint64_t code = 0; code < count; ++code) {
    Poly f = monic_from_code(code, degree, ops.order);
    if (is_irreducible(ops, f)) {
      f.pop_back();
      return f;
    }
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace

FiniteField build_field(std::uint64_t p, unsigned s) {
  if (!is_prime(p)) throw std::invalid_argument("build_field: " + std::to_string(p) + " is not prime");
  if (s < 1) throw std::invalid_argument("build_field: extension exponent must be at least 1");
  if (power(p, s) > kMaxOrder) throw std::invalid_argument("build_field: field order exceeds 2^16");
  FiniteField field;
  field.characteristic_ = p;
  field.coeff_order_ = p;
  field.degree_ = s;
  field.order_ = power(p, s).convert_to<std::uint64_t>();
  field.init(lowest_irreducible(CoeffOps{p, p, nullptr}, s));
  return field;
}

FiniteField build_extension(const FiniteField& base, unsigned degree) {
  if (degree < 1) throw std::invalid_argument("build_extension: degree must be at least 1");
  if (power(base.order(), degree) > kMaxOrder) {
    throw std::invalid_argument("build_extension: field order exceeds 2^16");
  }
  FiniteField field;
  field.base_ = std::make_shared<const FiniteField>(base);
  field.characteristic_ = base.characteristic();
  field.coeff_order_ = base.order();
  field.degree_ = degree;
  field.order_ = power(base.order(), degree).convert_to<std::uint64_t>();
  field.init(lowest_irreducible(CoeffOps{base.order(), base.characteristic(), &base}, degree));
  return field;
}

FiniteField field_of_order(std::uint64_t q) {
  const auto pp = factor_prime_power(q);
  if (!pp) throw std::invalid_argument("field_of_order: " + std::to_string(q) + " is not a prime power");
  return build_field(pp->prime, pp->exponent);
}

unsigned rank_over_base(const FiniteField& field, Matrix matrix) {
  unsigned rank = 0;
  for (std::size_t col = 0; col < matrix.cols && rank < matrix.rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < matrix.rows && matrix.at(pivot, col) == 0) ++pivot;
    if (pivot == matrix.rows) continue;
    if (pivot != rank) {
      for (std::size_t c = 0; c < matrix.cols; ++c) std::swap(matrix.at(pivot, c), matrix.at(rank, c));
    }
    const auto pivot_inv = field.inv(matrix.at(rank, col));
    for (std::size_t r = rank + 1; r < matrix.rows; ++r) {
      const auto factor = field.mul(matrix.at(r, col), pivot_inv);
      if (factor == 0) continue;
      for (std::size_t c = col; c < matrix.cols; ++c) {
        matrix.at(r, c) = field.sub(matrix.at(r, c), field.mul(factor, matrix.at(rank, c)));
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace sumrank

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace sumrank {

using ExactInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

ExactInt power(std::uint64_t base, std::uint64_t exp);

// C(n, k); zero outside 0 <= k <= n.
ExactInt binomial(std::int64_t n, std::int64_t k);

// Number of t-dimensional subspaces of F_q^n. Each multiply is followed by an
// exact division; integrality of every prefix product is checked.
ExactInt gaussian_binomial(std::int64_t n, std::int64_t t, std::uint64_t q);

// Number of rows x cols matrices over F_q with rank exactly t.
ExactInt num_matrices_of_rank(std::int64_t rows, std::int64_t cols, std::int64_t t,
                              std::uint64_t q);

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
};

// Trial factorization; nullopt when q is not a prime power (q < 2 included).
std::optional<PrimePower> factor_prime_power(std::uint64_t q);
bool is_prime(std::uint64_t p);

ExactInt ceil_div(const ExactInt& num, const ExactInt& den);
ExactInt floor_rational(const Rational& r);
ExactInt ceil_rational(const Rational& r);

// Largest integer r with r^k <= x, for x >= 0, k >= 1.
ExactInt integer_root(const ExactInt& x, unsigned k);

/// Closed interval [lo, hi] with decimal endpoints.
///
/// Endpoints carry at most `kDigits` fractional decimal digits; every
/// operation computes the exact rational result and then rounds lo down and
/// hi up, so the interval always encloses the true real value.
class RealInterval {
public:
  static constexpr unsigned kDigits = 60;

  RealInterval() = default;
  // Throws std::invalid_argument if lo > hi.
  RealInterval(const Rational& lo, const Rational& hi);
  static RealInterval point(const Rational& value);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  bool contains(const Rational& value) const { return lo_ <= value && value <= hi_; }
  bool contains(const RealInterval& other) const {
    return lo_ <= other.lo_ && other.hi_ <= hi_;
  }

  friend RealInterval operator+(const RealInterval& a, const RealInterval& b);
  friend RealInterval operator-(const RealInterval& a, const RealInterval& b);
  friend RealInterval operator*(const RealInterval& a, const RealInterval& b);
  // Throws std::domain_error if b contains zero.
  friend RealInterval operator/(const RealInterval& a, const RealInterval& b);

  RealInterval pow(unsigned exp) const;

  // Decimal rendering of the endpoints, lo rounded down and hi rounded up to
  // `digits` fractional digits.
  std::string lo_string(unsigned digits = 12) const;
  std::string hi_string(unsigned digits = 12) const;
  double lo_double() const;
  double hi_double() const;

private:
  Rational lo_{0};
  Rational hi_{0};
};

Rational round_down(const Rational& value, unsigned digits = RealInterval::kDigits);
Rational round_up(const Rational& value, unsigned digits = RealInterval::kDigits);
std::string decimal_string(const Rational& value, unsigned digits, bool round_upward);

// Certified enclosure of gamma_q = prod_{i>=1} (1 - q^-i)^-1 of width at most
// target_width. The lower end is a truncated product; the upper end bounds the
// tail by exp(x) <= 1/(1-x) with x = q^-N / ((q-1)(1-q^-(N+1))).
// Throws PrecisionError if the width cannot be reached within the term cap.
RealInterval gamma_q_interval(std::uint64_t q, const Rational& target_width);

// Truncated product prod_{i=1}^{terms} (1 - q^-i)^-1, exact.
Rational gamma_q_partial_product(std::uint64_t q, unsigned terms);

// Enclosure of q^(num/den) for den >= 1 (num may be negative).
RealInterval rational_power_interval(std::uint64_t q, std::int64_t num, std::int64_t den);

std::string to_string(const ExactInt& value);

}  // namespace sumrank

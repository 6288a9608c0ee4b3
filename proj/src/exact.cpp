#include "sumrank/exact.hpp"

#include <algorithm>
#include <stdexcept>

#include "sumrank/errors.hpp"

namespace sumrank {

namespace bmp = boost::multiprecision;

ExactInt power(std::uint64_t base, std::uint64_t exp) {
  ExactInt result = 1;
  ExactInt b = base;
  while (exp != 0) {
    if (exp & 1u) result *= b;
    exp >>= 1u;
    if (exp != 0) b *= b;
  }
  return result;
}

ExactInt binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  ExactInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= (n - k + i);
    result /= i;  // exact: result is C(n-k+i, i) here
  }
  return result;
}

ExactInt gaussian_binomial(std::int64_t n, std::int64_t t, std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("gaussian_binomial: q must be at least 2");
  if (n < 0 || t < 0 || t > n) return 0;
  ExactInt result = 1;
  for (std::int64_t i = 1; i <= t; ++i) {
    result *= power(q, static_cast<std::uint64_t>(n - t + i)) - 1;
    const ExactInt divisor = power(q, static_cast<std::uint64_t>(i)) - 1;
    ExactInt quotient;
    ExactInt remainder;
    bmp::divide_qr(result, divisor, quotient, remainder);
    if (remainder != 0) {
      throw std::logic_error("gaussian_binomial: non-integral prefix product");
    }
    result = std::move(quotient);
  }
  return result;
}

ExactInt num_matrices_of_rank(std::int64_t rows, std::int64_t cols, std::int64_t t,
                              std::uint64_t q) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("num_matrices_of_rank: rows and cols must be positive");
  }
  if (t < 0 || t > std::min(rows, cols)) return 0;
  ExactInt result = gaussian_binomial(cols, t, q);
  const ExactInt q_rows = power(q, static_cast<std::uint64_t>(rows));
  for (std::int64_t i = 0; i < t; ++i) {
    result *= q_rows - power(q, static_cast<std::uint64_t>(i));
  }
  return result;
}

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::optional<PrimePower> factor_prime_power(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return PrimePower{q, 1};
  unsigned exponent = 0;
  while (q % p == 0) {
    q /= p;
    ++exponent;
  }
  if (q != 1) return std::nullopt;
  return PrimePower{p, exponent};
}

ExactInt ceil_div(const ExactInt& num, const ExactInt& den) {
  if (den == 0) throw std::domain_error("ceil_div: division by zero");
  return ceil_rational(Rational(num, den));
}

ExactInt floor_rational(const Rational& r) {
  const ExactInt num = bmp::numerator(r);
  const ExactInt den = bmp::denominator(r);  // always positive
  ExactInt quotient;
  ExactInt remainder;
  bmp::divide_qr(num, den, quotient, remainder);
  if (remainder < 0) --quotient;
  return quotient;
}

ExactInt ceil_rational(const Rational& r) { return -floor_rational(-r); }

ExactInt integer_root(const ExactInt& x, unsigned k) {
  if (x < 0) throw std::domain_error("integer_root: negative radicand");
  if (k == 0) throw std::domain_error("integer_root: zero index");
  if (k == 1 || x < 2) return x;
  // Binary search between 2^floor(bits/k) and 2^(floor(bits/k)+1).
  const auto bits = static_cast<unsigned>(bmp::msb(x)) + 1;
  ExactInt lo = ExactInt(1) << ((bits - 1) / k);
  ExactInt hi = ExactInt(1) << ((bits - 1) / k + 1);
  while (hi - lo > 1) {
    ExactInt mid = (lo + hi) >> 1;
    if (bmp::pow(mid, k) <= x) {
      lo = std::move(mid);
    } else {
      hi = std::move(mid);
    }
  }
  return lo;
}

namespace {

ExactInt pow10(unsigned digits) { return power(10, digits); }

}  // namespace

Rational round_down(const Rational& value, unsigned digits) {
  const ExactInt scale = pow10(digits);
  return Rational(floor_rational(value * scale), scale);
}

Rational round_up(const Rational& value, unsigned digits) {
  const ExactInt scale = pow10(digits);
  return Rational(ceil_rational(value * scale), scale);
}

std::string decimal_string(const Rational& value, unsigned digits, bool round_upward) {
  const ExactInt scale = pow10(digits);
  ExactInt scaled = round_upward ? ceil_rational(value * scale) : floor_rational(value * scale);
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string body = scaled.str();
  if (digits > 0) {
    if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
    body.insert(body.size() - digits, ".");
  }
  return negative ? "-" + body : body;
}

RealInterval::RealInterval(const Rational& lo, const Rational& hi)
    : lo_(round_down(lo)), hi_(round_up(hi)) {
  if (lo > hi) throw std::invalid_argument("RealInterval: lo > hi");
}

RealInterval RealInterval::point(const Rational& value) { return RealInterval(value, value); }

RealInterval operator+(const RealInterval& a, const RealInterval& b) {
  return RealInterval(a.lo_ + b.lo_, a.hi_ + b.hi_);
}

RealInterval operator-(const RealInterval& a, const RealInterval& b) {
  return RealInterval(a.lo_ - b.hi_, a.hi_ - b.lo_);
}

RealInterval operator*(const RealInterval& a, const RealInterval& b) {
  const Rational p[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
  return RealInterval(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

RealInterval operator/(const RealInterval& a, const RealInterval& b) {
  if (b.lo_ <= 0 && b.hi_ >= 0) {
    throw std::domain_error("RealInterval: division by an interval containing zero");
  }
  const Rational p[4] = {a.lo_ / b.lo_, a.lo_ / b.hi_, a.hi_ / b.lo_, a.hi_ / b.hi_};
  return RealInterval(*std::min_element(p, p + 4), *std::max_element(p, p + 4));
}

RealInterval RealInterval::pow(unsigned exp) const {
  RealInterval result = point(1);
  for (unsigned i = 0; i < exp; ++i) result = result * *this;
  return result;
}

std::string RealInterval::lo_string(unsigned digits) const {
  return decimal_string(lo_, digits, false);
}

std::string RealInterval::hi_string(unsigned digits) const {
  return decimal_string(hi_, digits, true);
}

double RealInterval::lo_double() const { return lo_.convert_to<double>(); }
double RealInterval::hi_double() const { return hi_.convert_to<double>(); }

Rational gamma_q_partial_product(std::uint64_t q, unsigned terms) {
  if (q < 2) throw std::invalid_argument("gamma_q_partial_product: q must be at least 2");
  Rational product = 1;
  ExactInt q_i = 1;
  for (unsigned i = 1; i <= terms; ++i) {
    q_i *= q;
    product *= Rational(q_i, q_i - 1);
  }
  return product;
}

RealInterval gamma_q_interval(std::uint64_t q, const Rational& target_width) {
  if (q < 2) throw std::invalid_argument("gamma_q_interval: q must be at least 2");
  if (target_width <= 0) throw std::invalid_argument("gamma_q_interval: width must be positive");
  constexpr unsigned kMaxTerms = 512;

  // Tail: ln prod_{i>n} (1-q^-i)^-1 <= x_n = 1 / ((q-1) q^n - (q-1)/q), and
  // the width is at least x_n since the product is at least 1.
  auto tail = [q](const ExactInt& q_n) { return Rational(1, q_n * (q - 1)) / (1 - Rational(1, q_n * q)); };
  if (tail(power(q, kMaxTerms)) > target_width) {
    throw PrecisionError("gamma_q_interval: target width not reached within term cap");
  }

  // Numerator and denominator kept apart; normalising every step is slow.
  ExactInt num = 1;
  ExactInt den = 1;
  ExactInt q_n = 1;
  for (unsigned n = 1; n <= kMaxTerms; ++n) {
    q_n *= q;
    num *= q_n;
    den *= q_n - 1;
    const Rational x = tail(q_n);
    if (x >= 1 || x > target_width) continue;
    const Rational product(num, den);
    RealInterval enclosure(product, product / (1 - x));
    if (enclosure.width() <= target_width) return enclosure;
  }
  throw PrecisionError("gamma_q_interval: target width not reached within term cap");
}

RealInterval rational_power_interval(std::uint64_t q, std::int64_t num, std::int64_t den) {
  if (den < 1) throw std::invalid_argument("rational_power_interval: denominator must be positive");
  std::int64_t whole = num / den;
  std::int64_t frac = num % den;
  if (frac < 0) {
    frac += den;
    --whole;
  }
  const Rational integral_part =
      whole >= 0 ? Rational(power(q, static_cast<std::uint64_t>(whole)))
                 : Rational(ExactInt(1), power(q, static_cast<std::uint64_t>(-whole)));
  if (frac == 0) return RealInterval::point(integral_part);

  // q^(frac/den) lies in [r, r+1] / 10^D where r = floor((q^frac * 10^(D*den))^(1/den)).
  const unsigned digits = RealInterval::kDigits;
  const ExactInt scale = power(10, digits);
  const ExactInt radicand =
      power(q, static_cast<std::uint64_t>(frac)) * power(10, static_cast<std::uint64_t>(digits) * den);
  const ExactInt root = integer_root(radicand, static_cast<unsigned>(den));
  const RealInterval root_part(Rational(root, scale), Rational(root + 1, scale));
  return root_part * RealInterval::point(integral_part);
}

std::string to_string(const ExactInt& value) { return value.str(); }

}  // namespace sumrank

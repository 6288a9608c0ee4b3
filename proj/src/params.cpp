#include "sumrank/params.hpp"

#include <sstream>
#include <stdexcept>

namespace sumrank {

CodeParams::CodeParams(std::uint64_t q, unsigned m, unsigned eta, unsigned ell)
    : q_(q), m_(m), eta_(eta), ell_(ell) {
  const auto pp = factor_prime_power(q);
  if (!pp) throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
  if (m == 0 || eta == 0 || ell == 0) {
    throw std::invalid_argument("m, eta and ell must all be at least 1");
  }
  prime_ = pp->prime;
  exponent_ = pp->exponent;
}

CodeParams CodeParams::reshaped(unsigned new_ell) const {
  if (new_ell == 0 || n() % new_ell != 0) {
    throw std::invalid_argument("reshape: block count must divide n");
  }
  return CodeParams(q_, m_, n() / new_ell, new_ell);
}

std::string CodeParams::to_string() const {
  std::ostringstream out;
  out << "q=" << q_ << " m=" << m_ << " eta=" << eta_ << " ell=" << ell_;
  return out.str();
}

}  // namespace sumrank

#pragma once

#include <cstdint>
#include <string>

#include "sumrank/exact.hpp"

namespace sumrank {

/// Ambient space F_{q^m}^n split into ell blocks of length eta.
///
/// q must be a prime power; all other fields are positive. The derived
/// quantities are n = ell * eta and mu = min(m, eta), the largest rank a
/// single block can have.
class CodeParams {
public:
  // Throws std::invalid_argument on a non prime-power q or a zero field.
  CodeParams(std::uint64_t q, unsigned m, unsigned eta, unsigned ell);

  std::uint64_t q() const { return q_; }
  unsigned m() const { return m_; }
  unsigned eta() const { return eta_; }
  unsigned ell() const { return ell_; }
  unsigned n() const { return ell_ * eta_; }
  unsigned mu() const { return m_ < eta_ ? m_ : eta_; }
  unsigned max_weight() const { return mu() * ell_; }

  std::uint64_t characteristic() const { return prime_; }
  unsigned field_exponent() const { return exponent_; }

  // q^{mn}, the number of vectors in the space.
  ExactInt space_size() const { return power(q_, std::uint64_t{m_} * n()); }

  // Same space regrouped into new_ell blocks; new_ell must divide n.
  CodeParams reshaped(unsigned new_ell) const;

  std::string to_string() const;

  friend bool operator==(const CodeParams&, const CodeParams&) = default;

private:
  std::uint64_t q_;
  unsigned m_;
  unsigned eta_;
  unsigned ell_;
  std::uint64_t prime_;
  unsigned exponent_;
};

}  // namespace sumrank

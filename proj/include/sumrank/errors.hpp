#pragma once

#include <stdexcept>
#include <string>

namespace sumrank {

// Argument outside an operation's admissible range (e.g. a covering radius
// outside 0 < rho < mu*ell for a bound that needs the nontrivial regime).
class RangeError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// A certified interval could not be narrowed to the requested width.
class PrecisionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Enumeration or search would exceed its configured space or time budget.
class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace sumrank

#pragma once

#include <stdexcept>
#include <string>

namespace essdim {

// Parameters outside the covered case split (l = 2 gates, defining prime).
class UnsupportedCase : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// l equals the characteristic p.
class DefiningPrime : public UnsupportedCase {
 public:
  using UnsupportedCase::UnsupportedCase;
};

// An exhaustive enumeration would exceed its element budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A constructed object violated an internal invariant.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace essdim

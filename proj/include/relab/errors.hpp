#pragma once

#include <stdexcept>

namespace relab {

/// Dual-precision evaluation kept disagreeing after escalation.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A measured quantity left an interval that is proven (or catalogued) to hold.
class BoundViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace relab

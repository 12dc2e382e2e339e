#ifndef MINMOD_ERRORS_HPP
#define MINMOD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace minmod {

// Base class for numerical failures raised by the evaluation engine.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Requested tolerance could not be met within the evaluation budget.
class NonConvergent : public NumericError {
 public:
  explicit NonConvergent(const std::string& what) : NumericError(what) {}
};

// Angle outside the supported range [0, pi].
class InvalidAngle : public NumericError {
 public:
  explicit InvalidAngle(const std::string& what) : NumericError(what) {}
};

// The zero-counting function grows too fast for tail integrals to converge.
class UnboundedTail : public NumericError {
 public:
  explicit UnboundedTail(const std::string& what) : NumericError(what) {}
};

// log log M undefined at the requested radius.
class DomainTooSmall : public NumericError {
 public:
  explicit DomainTooSmall(const std::string& what) : NumericError(what) {}
};

// Beurling check: threshold at or above the maximum modulus at the base radius.
class ThresholdTooHigh : public NumericError {
 public:
  explicit ThresholdTooHigh(const std::string& what) : NumericError(what) {}
};

// A counting target or delta function violates its declared monotonicity.
class NonMonotoneSpec : public NumericError {
 public:
  explicit NonMonotoneSpec(const std::string& what) : NumericError(what) {}
};

// Function-spec files that fail to parse or violate field constraints.
class SpecParseError : public std::runtime_error {
 public:
  explicit SpecParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace minmod

#endif

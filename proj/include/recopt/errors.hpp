#pragma once

#include <stdexcept>

namespace recopt {

// Base type for every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A probability entry was zero, negative, or not finite.
class NonPositiveEntry : public Error {
 public:
  using Error::Error;
};

// Entries do not sum to one within the stated tolerance.
class SumOutOfTolerance : public Error {
 public:
  using Error::Error;
};

// Fewer than two classes.
class TooShort : public Error {
 public:
  using Error::Error;
};

// Two vectors of different lengths were combined.
class LengthMismatch : public Error {
 public:
  using Error::Error;
};

// A tilted quantity overflowed to a non-finite value.
class NonFiniteResult : public Error {
 public:
  using Error::Error;
};

// Class index outside [0, N).
class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

// An infinite tilt selects the extreme class, but the extremum is tied.
class AmbiguousExtremum : public Error {
 public:
  using Error::Error;
};

// Operation undefined when the revenue denominator is zero.
class NeutralSystem : public Error {
 public:
  using Error::Error;
};

// Root target outside the open range of the tilted mean.
class TargetOutOfRange : public Error {
 public:
  using Error::Error;
};

// Iteration cap reached before the requested tolerance.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

// The requested check does not apply to this result.
class NotApplicable : public Error {
 public:
  using Error::Error;
};

// Exhaustive grid search rejected: too many classes.
class DimensionTooLarge : public Error {
 public:
  using Error::Error;
};

// Closed form and exhaustive search disagree on feasibility.
class FeasibilityMismatch : public Error {
 public:
  using Error::Error;
};

// Malformed or contradictory run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace recopt

#pragma once

#include <stdexcept>
#include <string>

namespace circleflow {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A negative or fractional power, or a metric, needs a strictly positive
/// function and the input came within the positivity floor of zero.
class PositivityViolation : public Error {
 public:
  using Error::Error;
};

/// The operation is defined for the other conformal convention.
class ConventionMismatch : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

/// A single flow step broke positivity or the per-step change bound.
class StepRejected : public Error {
 public:
  using Error::Error;
};

/// Repeated step rejection drove the time step below its floor.
class BlowupSuspected : public Error {
 public:
  using Error::Error;
};

}  // namespace circleflow

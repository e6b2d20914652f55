#pragma once

#include <stdexcept>
#include <string>

namespace nframes {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent inputs: dimension mismatches, measure
/// mismatches, bad argument values.
class InputError : public Error {
public:
  using Error::Error;
};

/// Anchor vectors fail the linear-independence requirement.
class DegenerateAnchorError : public Error {
public:
  DegenerateAnchorError(const std::string& what, double ratio)
      : Error(what), singular_value_ratio(ratio) {}

  /// sigma_min / sigma_max of the anchor matrix.
  double singular_value_ratio = 0.0;
};

/// A family that is not a frame was used where a frame is required.
/// Carries the extremal eigenvalues of the frame operator for diagnostics.
class SingularFrameError : public Error {
public:
  SingularFrameError(const std::string& what, double lmin, double lmax)
      : Error(what), lambda_min(lmin), lambda_max(lmax) {}

  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

/// Two families fail a required duality relation.
class NotADualError : public Error {
public:
  NotADualError(const std::string& what, double residual)
      : Error(what), max_residual(residual) {}

  /// Largest entrywise deviation from the reproducing identity.
  double max_residual = 0.0;
};

} // namespace nframes

#pragma once

#include <stdexcept>
#include <string>

namespace dlt {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (strip, sign, range).
struct DomainError : Error {
  using Error::Error;
};

/// Evaluation requested too close to a pole of the function.
struct PoleError : Error {
  using Error::Error;
};

/// Evaluation strategy not available for the given coupling.
struct ModeError : Error {
  using Error::Error;
};

/// Quadrature or series failed to reach tolerance within its budget.
struct ConvergenceError : Error {
  using Error::Error;
};

/// A computed prefactor or value left the representable range.
struct OverflowError : Error {
  using Error::Error;
};

/// A sample point violates the admissibility region of an identity.
/// `inequality` names the first violated condition.
struct AdmissibilityError : Error {
  explicit AdmissibilityError(const std::string& which)
      : Error("admissibility violated: " + which), inequality(which) {}
  std::string inequality;
};

/// Invalid configuration: quadrature spec, flip configuration, word token.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace dlt

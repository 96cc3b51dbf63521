#pragma once

#include <stdexcept>
#include <string>

namespace expsum {

enum class ErrorKind {
  InvalidArgument,
  NotPrime,
  Overflow,
  NotInvertible,
  NotCoprime,
  ZeroFunction,
  AllDerivativesZero,
  PoleModP,
  ConductorMismatch,
  IncompatibleConductors,
  BudgetExceeded,
  NotApplicable,
  SingularHessian,
  SingularHessianOutOfScope,
  TaylorRemainder,
  NoConvergence,
  SingularModP,
  Parse,
};

const char* to_string(ErrorKind kind);

// Single exception type; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace expsum

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nonnoether {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A field evaluation produced a non-finite value, or an argument left the
/// region where the computation is defined.
class NumericalDomainError : public Error {
 public:
  using Error::Error;
};

/// Operand degrees are incompatible with the requested operation.
class DegreeError : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be antisymmetric is not.
class StructureError : public Error {
 public:
  using Error::Error;
};

class DegenerateSymplecticError : public Error {
 public:
  using Error::Error;
};

class MissingSymmetryError : public Error {
 public:
  MissingSymmetryError() : Error("system has no symmetry generator E") {}
};

/// Requested phase-space dimension exceeds what the antisymmetric storage
/// supports.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, long step)
      : Error(what + " (step " + std::to_string(step) + ")"), step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

/// Two algebraically equivalent routes disagreed beyond round-off.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Malformed system specification (missing keys, wrong counts, bad types).
class SpecFormatError : public Error {
 public:
  using Error::Error;
};

struct GateFailure {
  std::string gate;
  std::vector<double> point;
  double residual = 0.0;
  std::string detail;
};

/// Raised by the system loader when one or more validation gates fail.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<GateFailure> failures);
  const std::vector<GateFailure>& failures() const { return failures_; }

 private:
  std::vector<GateFailure> failures_;
};

}  // namespace nonnoether

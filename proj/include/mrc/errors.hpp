#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mrc {

enum class ErrorKind {
  InvalidSpec,
  InvalidDegree,
  TheoremNotApplicable,
  EmptyLocus,
  FormulaViolation,
  IncompatibleOperands,
  InvalidSubstitution,
  MalformedPolynomial,
  InvalidForm,
  PointNotOnVariety,
  DegenerateConfiguration,
  InvalidField,
  DegenerateLine,
  FieldTooSmall,
  CapacityExceeded,
  GenerationFailed,
  InternalError,
};

std::string_view to_string(ErrorKind kind);

// Every library failure is reported through this type; kind() carries the
// contract-level error name.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mrc

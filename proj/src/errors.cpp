#include "mrc/errors.hpp"

namespace mrc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::InvalidDegree: return "InvalidDegree";
    case ErrorKind::TheoremNotApplicable: return "TheoremNotApplicable";
    case ErrorKind::EmptyLocus: return "EmptyLocus";
    case ErrorKind::FormulaViolation: return "FormulaViolation";
    case ErrorKind::IncompatibleOperands: return "IncompatibleOperands";
    case ErrorKind::InvalidSubstitution: return "InvalidSubstitution";
    case ErrorKind::MalformedPolynomial: return "MalformedPolynomial";
    case ErrorKind::InvalidForm: return "InvalidForm";
    case ErrorKind::PointNotOnVariety: return "PointNotOnVariety";
    case ErrorKind::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorKind::InvalidField: return "InvalidField";
    case ErrorKind::DegenerateLine: return "DegenerateLine";
    case ErrorKind::FieldTooSmall: return "FieldTooSmall";
    case ErrorKind::CapacityExceeded: return "CapacityExceeded";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
    case ErrorKind::InternalError: return "InternalError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace mrc

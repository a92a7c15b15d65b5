#include "capq/errors.hpp"

#include <utility>

namespace capq {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OverlappingContinua: return "OverlappingContinua";
    case ErrorCode::DegenerateShape: return "DegenerateShape";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::DisconnectedDomain: return "DisconnectedDomain";
    case ErrorCode::OutOfAnnulus: return "OutOfAnnulus";
    case ErrorCode::LevelNotFound: return "LevelNotFound";
    case ErrorCode::DegenerateCurve: return "DegenerateCurve";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::ValidityCondition: return "ValidityCondition";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::DegenerateJacobian: return "DegenerateJacobian";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::MissingLevel: return "MissingLevel";
    case ErrorCode::UsageError: return "UsageError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::FormatError: return "FormatError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::string stage)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      message_(message),
      stage_(std::move(stage)) {}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UsageError:
    case ErrorCode::FormatError:
    case ErrorCode::InvalidSpec:
    case ErrorCode::DomainError:
    case ErrorCode::OverlappingContinua:
    case ErrorCode::DegenerateShape:
    case ErrorCode::OutOfBounds:
      return 2;
    case ErrorCode::IoError:
      return 4;
    default:
      return 3;
  }
}

}  // namespace capq

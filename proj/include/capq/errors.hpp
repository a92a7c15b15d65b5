#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace capq {

enum class ErrorCode {
  OverlappingContinua,
  DegenerateShape,
  OutOfBounds,
  InvalidSpec,
  ResolutionTooCoarse,
  NonConvergence,
  DisconnectedDomain,
  OutOfAnnulus,
  LevelNotFound,
  DegenerateCurve,
  DomainError,
  ValidityCondition,
  DomainViolation,
  DegenerateJacobian,
  QuadratureFailure,
  MissingLevel,
  UsageError,
  IoError,
  FormatError,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception. `stage()` names the pipeline step or conformal
/// stage that raised it when that is known, and is empty otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string stage = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& stage() const noexcept { return stage_; }
  // The message without the "Code: " prefix that what() carries.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
  std::string stage_;
};

// CLI exit status for an error: 2 usage, 3 numerical failure, 4 I/O.
int exit_code_for(ErrorCode code);

}  // namespace capq

#pragma once

#include <stdexcept>
#include <string>

namespace okkit {

enum class ErrorCode {
  Dimension,
  Parse,
  UndefinedValuation,
  InconclusiveValuation,
  Evaluation,
  NotInSemigroup,
  EmptySemigroup,
  InsufficientSamples,
  Unsupported,
  NoProjection,
  InconsistentProjection,
  FamilyConstruction,
  TooLarge,
  Chart,
  InvalidScale,
  SingularPoint,
  CriticalPoint,
  RetractionDiverged,
  StepLimit,
  DegenerateForm,
  UnknownEntry,
  Verification,
  Usage,
};

const char* to_string(ErrorCode code) noexcept;

// Single exception type for the toolkit; the code says what went wrong,
// the message says where.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace okkit

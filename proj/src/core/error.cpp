#include "error.hpp"

namespace okkit {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Dimension: return "dimension";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::UndefinedValuation: return "undefined-valuation";
    case ErrorCode::InconclusiveValuation: return "inconclusive-valuation";
    case ErrorCode::Evaluation: return "evaluation";
    case ErrorCode::NotInSemigroup: return "not-in-semigroup";
    case ErrorCode::EmptySemigroup: return "empty-semigroup";
    case ErrorCode::InsufficientSamples: return "insufficient-samples";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::NoProjection: return "no-projection";
    case ErrorCode::InconsistentProjection: return "inconsistent-projection";
    case ErrorCode::FamilyConstruction: return "family-construction";
    case ErrorCode::TooLarge: return "too-large";
    case ErrorCode::Chart: return "chart";
    case ErrorCode::InvalidScale: return "invalid-scale";
    case ErrorCode::SingularPoint: return "singular-point";
    case ErrorCode::CriticalPoint: return "critical-point";
    case ErrorCode::RetractionDiverged: return "retraction-diverged";
    case ErrorCode::StepLimit: return "step-limit";
    case ErrorCode::DegenerateForm: return "degenerate-form";
    case ErrorCode::UnknownEntry: return "unknown-entry";
    case ErrorCode::Verification: return "verification";
    case ErrorCode::Usage: return "usage";
  }
  return "unknown";
}

}  // namespace okkit

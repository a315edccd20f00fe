#include "common.hpp"

namespace stokeskit {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kPreconditionViolation: return "PreconditionViolation";
    case ErrorCode::kStepUnderflow: return "StepUnderflow";
    case ErrorCode::kNonFiniteState: return "NonFiniteState";
    case ErrorCode::kMismatchedEvaluationPoint: return "MismatchedEvaluationPoint";
    case ErrorCode::kBranchCutViolation: return "BranchCutViolation";
    case ErrorCode::kSeedInsufficient: return "SeedInsufficient";
    case ErrorCode::kDegenerateWronskian: return "DegenerateWronskian";
    case ErrorCode::kZeroOnContour: return "ZeroOnContour";
    case ErrorCode::kPhaseJumpUnresolved: return "PhaseJumpUnresolved";
    case ErrorCode::kNoZeroEnclosed: return "NoZeroEnclosed";
    case ErrorCode::kNewtonStalled: return "NewtonStalled";
    case ErrorCode::kSectorViolation: return "SectorViolation";
    case ErrorCode::kEvaluationOutsideSubdominantMargin: return "EvaluationOutsideSubdominantMargin";
    case ErrorCode::kKVanishes: return "KVanishes";
    case ErrorCode::kGridTooCoarse: return "GridTooCoarse";
    case ErrorCode::kInequalityFailsAtAllTau: return "InequalityFailsAtAllTau";
    case ErrorCode::kOriginSingular: return "OriginSingular";
    case ErrorCode::kDomainViolation: return "DomainViolation";
    case ErrorCode::kSampleExhausted: return "SampleExhausted";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace stokeskit

#include "stablevt/error.hpp"

namespace stablevt {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kDegenerateSample: return "degenerate_sample";
    case ErrorCode::kInfiniteMeanCorrection: return "infinite_mean_correction";
    case ErrorCode::kSingularity: return "singularity";
    case ErrorCode::kUnboundedInterval: return "unbounded_interval";
    case ErrorCode::kDegenerateTrajectory: return "degenerate_trajectory";
    case ErrorCode::kSelectionFailure: return "selection_failure";
    case ErrorCode::kEmptySummary: return "empty_summary";
    case ErrorCode::kNumerical: return "numerical";
  }
  return "unknown";
}

}  // namespace stablevt

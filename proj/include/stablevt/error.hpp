#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stablevt {

/// Failure categories shared by every estimator. The simulation harness
/// records these per target instead of aborting a run.
enum class ErrorCode {
  kInvalidArgument,
  kDomain,
  kDegenerateSample,
  kInfiniteMeanCorrection,
  kSingularity,
  kUnboundedInterval,
  kDegenerateTrajectory,
  kSelectionFailure,
  kEmptySummary,
  kNumerical,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace stablevt

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "stablevt/confidence.hpp"
#include "stablevt/error.hpp"
#include "stablevt/estimators.hpp"
#include "stablevt/k_selection.hpp"
#include "stablevt/stable.hpp"

namespace stablevt {

/// Which parameters to estimate; bit per Target.
class TargetSet {
 public:
  constexpr TargetSet() noexcept = default;
  static constexpr TargetSet all() noexcept { return TargetSet(0b111); }
  constexpr TargetSet with(Target t) const noexcept {
    return TargetSet(bits_ | bit(t));
  }
  constexpr bool has(Target t) const noexcept { return (bits_ & bit(t)) != 0; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr unsigned bits() const noexcept { return bits_; }
  static constexpr TargetSet from_bits(unsigned b) noexcept {
    return TargetSet(b & 0b111);
  }

 private:
  constexpr explicit TargetSet(unsigned bits) noexcept : bits_(bits) {}
  static constexpr unsigned bit(Target t) noexcept {
    return 1u << static_cast<unsigned>(t);
  }
  unsigned bits_ = 0;
};

/// Settings shared by the simulation and by estimation on observed data.
struct EstimationOptions {
  double level = 0.95;
  double theta = kDefaultTheta;
  /// Unset bounds fall back to default_k_range(n).
  std::optional<std::size_t> k_min;
  std::optional<std::size_t> k_max;
  TargetSet targets = TargetSet::all();
  LowerThreshold lower_threshold = LowerThreshold::kKth;
};

/// Estimate and interval for one parameter. For a requested target exactly
/// one of {estimate, failure} is set; the interval is set with the estimate.
struct TargetOutcome {
  std::optional<double> estimate;
  std::optional<ConfidenceInterval> interval;
  std::optional<ErrorCode> failure;

  bool valid() const noexcept { return estimate.has_value(); }
};

struct SampleEstimate {
  std::size_t n = 0;
  std::size_t k_star = 0;  // 0 when selection failed
  TargetOutcome alpha;
  TargetOutcome mu;
  TargetOutcome sigma;

  const TargetOutcome& outcome(Target t) const noexcept;
};

/// Full two-step procedure on one data set: pick k* from the |X| Hill
/// trajectory, then estimate alpha, mu and sigma at k* and build intervals.
/// Estimation failures are recorded per target, never thrown. Throws
/// Error(kInvalidArgument) only for bad options or unusable data.
SampleEstimate estimate_sample(std::span<const double> data,
                               const EstimationOptions& options);

struct ExperimentConfig {
  StableParams params{1.1, 1.0, 0.0};
  std::size_t n = 3000;
  std::size_t reps = 1000;
  std::uint64_t master_seed = 42;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;
  EstimationOptions estimation;

  /// Throws Error(kInvalidArgument) on any out-of-range field.
  void validate() const;
};

using ReplicationResult = SampleEstimate;

/// Replication `index`, drawn from child stream (master_seed, index).
ReplicationResult run_replication(const ExperimentConfig& config,
                                  std::size_t index);

/// Replications 0..reps-1, spread over config.workers threads. The output
/// does not depend on the worker count.
std::vector<ReplicationResult> run_experiment(const ExperimentConfig& config);

struct SummaryRow {
  Target target;
  double true_value;
  double mean_estimate;
  double abs_bias;
  double mse;
  double ci_lower;  // mean lower endpoint
  double ci_upper;  // mean upper endpoint
  double length;    // ci_upper - ci_lower
  double cov_prob;  // over valid replications
  std::size_t valid_reps;
};

/// Aggregates valid replications of `target`. kEmptySummary if none.
SummaryRow summarize(std::span<const ReplicationResult> results,
                     const StableParams& truth, Target target);

struct HillPlotRow {
  std::size_t k;
  double alpha_hat;
  double true_alpha;
};

/// Hill trajectory k = 1..k_max of one sample drawn with RandomStream(seed).
std::vector<HillPlotRow> hill_plot_data(const StableParams& params,
                                        std::size_t n, std::size_t k_max,
                                        std::uint64_t seed);

struct GridSpec {
  double lower;
  double upper;
  double step;

  /// lower, lower + step, ... up to upper (inclusive within step/1e6).
  std::vector<double> points() const;
};

struct DensityRow {
  double x;
  double alpha;
  double density;
};

/// Densities of S_alpha(1, 0, 0) on `grid`, grouped by alpha in input order.
std::vector<DensityRow> density_figure_data(std::span<const double> alphas,
                                            const GridSpec& grid);

}  // namespace stablevt

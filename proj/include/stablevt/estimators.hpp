#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stablevt {

/// Ascending order statistics X_{1:n} <= ... <= X_{n:n}. Immutable once
/// built; the only sort happens in the constructor.
class SortedSample {
 public:
  /// Throws Error(kInvalidArgument) when empty or any value is non-finite.
  explicit SortedSample(std::vector<double> values);

  /// Sorted absolute values |X|.
  static SortedSample magnitudes_of(std::span<const double> values);

  /// Ascending order statistics of -X, obtained by reversal.
  SortedSample negated() const;

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }

  /// X_{i:n}, 1-based.
  double order_stat(std::size_t i) const { return values_.at(i - 1); }
  /// i-th largest value, X_{n-i+1:n}, 1-based.
  double largest(std::size_t i) const {
    return values_.at(values_.size() - i);
  }

 private:
  struct AlreadySorted {};
  SortedSample(std::vector<double> values, AlreadySorted) noexcept
      : values_(std::move(values)) {}

  std::vector<double> values_;
};

enum class TailVariant { kAbsolute, kUpper, kLower };

/// Threshold used by the lower-tail index estimate. The published lower-tail
/// form divides by the k-th largest magnitude, so its last log-spacing is
/// always zero; kKPlusOne aligns it with the usual Hill threshold.
enum class LowerThreshold { kKth, kKPlusOne };

struct TailIndexEstimate {
  double alpha_hat;
  std::size_t k;
  TailVariant variant;
};

/// Hill estimate from ascending magnitudes: the reciprocal of the mean log
/// excess of the top k values over the threshold. The threshold is the
/// (k+1)-th largest value, except for kLower with LowerThreshold::kKth where
/// it is the k-th largest.
///
/// Errors: k outside [1, n-1] or a nonpositive threshold gives kDomain; a zero
/// mean log excess gives kDegenerateSample.
TailIndexEstimate hill_tail(const SortedSample& magnitudes, std::size_t k,
                            TailVariant variant = TailVariant::kAbsolute,
                            LowerThreshold lower = LowerThreshold::kKth);

struct LocationEstimate {
  double value;          // sum of the three parts
  double lower_part;     // (k/n) X_{k:n} a1 / (a1 - 1)
  double trimmed_part;   // (1/n) sum_{i=k+1}^{n-k} X_{i:n}
  double upper_part;     // (k/n) X_{n-k+1:n} a3 / (a3 - 1)
  double alpha_lower;    // a1
  double alpha_upper;    // a3
};

/// Location estimate combining a trimmed mean with Pareto-tail corrections
/// for the k smallest and k largest observations.
///
/// Requires 2k < n, X_{k:n} < 0 and X_{n-k:n} > 0 (kDomain otherwise). Either
/// tail index <= 1 gives kInfiniteMeanCorrection.
LocationEstimate peng_location(const SortedSample& sample, std::size_t k,
                               LowerThreshold lower = LowerThreshold::kKth);

/// Sum of X_{k+1:n}..X_{n-k:n} divided by n (not by n - 2k). Summed in
/// mirrored pairs from the outside in.
double trimmed_sum_over_n(const SortedSample& sample, std::size_t k);

/// Scale estimate threshold * (k pi / (2 n Gamma(a) sin(pi a / 2)))^(1/a).
double scale_estimate(double threshold, std::size_t k, std::size_t n,
                      double alpha_hat);

/// Square root of the location estimator's asymptotic variance factor.
/// Defined for 1 < alpha_hat <= 2.
double delta_factor(double alpha_hat);

/// Plug-in approximation -2 sqrt(k/n) X_{k:n} / sqrt(2 - alpha_hat) of the
/// location estimator's normalizing sequence.
double tau_factor(double lower_stat, std::size_t k, std::size_t n,
                  double alpha_hat);

}  // namespace stablevt

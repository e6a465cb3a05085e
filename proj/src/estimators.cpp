#include "stablevt/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "stablevt/error.hpp"

namespace stablevt {
namespace {

constexpr double kPi = std::numbers::pi;

void require_k(std::size_t k, std::size_t n, const char* who) {
  if (k < 1 || k >= n) {
    std::ostringstream os;
    os << who << ": k=" << k << " outside [1, n-1] for n=" << n;
    fail(ErrorCode::kDomain, os.str());
  }
}

}  // namespace

SortedSample::SortedSample(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) {
    fail(ErrorCode::kInvalidArgument, "sample must contain at least one value");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      fail(ErrorCode::kInvalidArgument, "sample contains a non-finite value");
    }
  }
  std::sort(values_.begin(), values_.end());
}

SortedSample SortedSample::magnitudes_of(std::span<const double> values) {
  std::vector<double> mags(values.size());
  std::transform(values.begin(), values.end(), mags.begin(),
                 [](double v) { return std::abs(v); });
  return SortedSample(std::move(mags));
}

SortedSample SortedSample::negated() const {
  std::vector<double> out(values_.rbegin(), values_.rend());
  for (double& v : out) v = -v;
  return SortedSample(std::move(out), AlreadySorted{});
}

TailIndexEstimate hill_tail(const SortedSample& magnitudes, std::size_t k,
                            TailVariant variant, LowerThreshold lower) {
  const std::size_t n = magnitudes.size();
  require_k(k, n, "hill_tail");
  const bool kth = variant == TailVariant::kLower && lower == LowerThreshold::kKth;
  const double threshold = magnitudes.largest(kth ? k : k + 1);
  if (!(threshold > 0.0)) {
    std::ostringstream os;
    os << "hill_tail: threshold magnitude " << threshold
       << " is not positive at k=" << k;
    fail(ErrorCode::kDomain, os.str());
  }
  double sum_log = 0.0;
  for (std::size_t i = 1; i <= k; ++i) sum_log += std::log(magnitudes.largest(i));
  const double excess = sum_log / static_cast<double>(k) - std::log(threshold);
  if (!(excess > 0.0)) {
    std::ostringstream os;
    os << "hill_tail: zero mean log excess at k=" << k << " (tied values)";
    fail(ErrorCode::kDegenerateSample, os.str());
  }
  return {1.0 / excess, k, variant};
}

double trimmed_sum_over_n(const SortedSample& sample, std::size_t k) {
  const auto x = sample.values();
  const std::size_t n = x.size();
  if (2 * k >= n) fail(ErrorCode::kDomain, "trimmed mean needs 2k < n");
  double sum = 0.0;
  std::size_t lo = k;
  std::size_t hi = n - k - 1;
  for (; lo < hi; ++lo, --hi) sum += x[lo] + x[hi];
  if (lo == hi) sum += x[lo];
  return sum / static_cast<double>(n);
}

LocationEstimate peng_location(const SortedSample& sample, std::size_t k,
                               LowerThreshold lower) {
  const std::size_t n = sample.size();
  if (k < 1 || 2 * k >= n) {
    std::ostringstream os;
    os << "peng_location: need 1 <= k and 2k < n, got k=" << k << " n=" << n;
    fail(ErrorCode::kDomain, os.str());
  }
  const double x_k = sample.order_stat(k);
  const double x_nk = sample.order_stat(n - k);
  if (!(x_k < 0.0) || !(x_nk > 0.0)) {
    std::ostringstream os;
    os << "peng_location: both tails must be populated (X_{k:n}=" << x_k
       << ", X_{n-k:n}=" << x_nk << ")";
    fail(ErrorCode::kDomain, os.str());
  }

  const double a1 =
      hill_tail(sample.negated(), k, TailVariant::kLower, lower).alpha_hat;
  const double a3 = hill_tail(sample, k, TailVariant::kUpper).alpha_hat;
  if (!(a1 > 1.0) || !(a3 > 1.0)) {
    std::ostringstream os;
    os << "peng_location: tail index estimates " << a1 << " (lower), " << a3
       << " (upper) must both exceed 1";
    fail(ErrorCode::kInfiniteMeanCorrection, os.str());
  }

  const double frac = static_cast<double>(k) / static_cast<double>(n);
  LocationEstimate est{};
  est.alpha_lower = a1;
  est.alpha_upper = a3;
  est.lower_part = frac * x_k * a1 / (a1 - 1.0);
  est.upper_part = frac * sample.order_stat(n - k + 1) * a3 / (a3 - 1.0);
  est.trimmed_part = trimmed_sum_over_n(sample, k);
  est.value = est.lower_part + est.trimmed_part + est.upper_part;
  return est;
}

double scale_estimate(double threshold, std::size_t k, std::size_t n,
                      double alpha_hat) {
  require_k(k, n, "scale_estimate");
  if (!(threshold > 0.0)) {
    fail(ErrorCode::kDomain, "scale_estimate: threshold must be positive");
  }
  if (!(alpha_hat > 0.0 && alpha_hat < 2.0)) {
    std::ostringstream os;
    os << "scale_estimate: tail index " << alpha_hat << " outside (0, 2)";
    fail(ErrorCode::kDomain, os.str());
  }
  const double ratio = static_cast<double>(k) * kPi /
                       (2.0 * static_cast<double>(n) * std::tgamma(alpha_hat) *
                        std::sin(kPi * alpha_hat / 2.0));
  return threshold * std::pow(ratio, 1.0 / alpha_hat);
}

double delta_factor(double alpha_hat) {
  if (!(alpha_hat > 1.0)) {
    std::ostringstream os;
    os << "delta_factor: singular at tail index " << alpha_hat << " <= 1";
    fail(ErrorCode::kSingularity, os.str());
  }
  if (alpha_hat > 2.0) {
    std::ostringstream os;
    os << "delta_factor: tail index " << alpha_hat << " exceeds 2";
    fail(ErrorCode::kDomain, os.str());
  }
  const double a = alpha_hat;
  const double d = a - 1.0;
  const double d2 = d * d;
  const double sq = 1.0 + (2.0 - a) * (2.0 * a * a - 2.0 * a + 1.0) / (2.0 * d2 * d2) +
                    (2.0 - a) / d;
  return std::sqrt(sq);
}

double tau_factor(double lower_stat, std::size_t k, std::size_t n,
                  double alpha_hat) {
  require_k(k, n, "tau_factor");
  if (!(lower_stat < 0.0)) {
    std::ostringstream os;
    os << "tau_factor: lower order statistic " << lower_stat
       << " is not negative";
    fail(ErrorCode::kDomain, os.str());
  }
  if (!(alpha_hat > 1.0 && alpha_hat < 2.0)) {
    std::ostringstream os;
    os << "tau_factor: tail index " << alpha_hat << " outside (1, 2)";
    fail(ErrorCode::kDomain, os.str());
  }
  const double frac = static_cast<double>(k) / static_cast<double>(n);
  return -2.0 * std::sqrt(frac) * lower_stat / std::sqrt(2.0 - alpha_hat);
}

}  // namespace stablevt

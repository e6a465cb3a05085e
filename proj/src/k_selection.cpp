#include "stablevt/k_selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "stablevt/error.hpp"

namespace stablevt {
namespace {

void require_theta(double theta) {
  if (!(theta >= 0.0 && theta <= 0.5)) {
    std::ostringstream os;
    os << "theta must lie in [0, 0.5], got " << theta;
    fail(ErrorCode::kInvalidArgument, os.str());
  }
}

// Median of the first k entries; `scratch` is overwritten.
double prefix_median(std::span<const double> values, std::size_t k,
                     std::vector<double>& scratch) {
  scratch.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k));
  const auto mid = scratch.begin() + static_cast<std::ptrdiff_t>(k / 2);
  std::nth_element(scratch.begin(), mid, scratch.end());
  if (k % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(scratch.begin(), mid);
  return 0.5 * (lower + upper);
}

// weights[i-1] = i^theta
std::vector<double> rt_weights(std::size_t k, double theta) {
  std::vector<double> w(k);
  for (std::size_t i = 1; i <= k; ++i) {
    w[i - 1] = theta == 0.0 ? 1.0 : std::pow(static_cast<double>(i), theta);
  }
  return w;
}

double rt_with_scratch(std::span<const double> trajectory, std::size_t k,
                       std::span<const double> weights,
                       std::vector<double>& scratch) {
  const double med = prefix_median(trajectory, k, scratch);
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sum += weights[i] * std::abs(trajectory[i] - med);
  }
  return sum / static_cast<double>(k);
}

}  // namespace

KRange default_k_range(std::size_t n) {
  if (n < 2) fail(ErrorCode::kInvalidArgument, "sample too small for k range");
  const std::size_t cap = n - 1;
  const std::size_t k_min = std::min(std::max<std::size_t>(15, n / 50), cap);
  const std::size_t k_max = std::min(std::max(k_min, n / 10), cap);
  return {k_min, k_max};
}

std::vector<double> hill_trajectory(const SortedSample& magnitudes,
                                    std::size_t k_max) {
  const std::size_t n = magnitudes.size();
  if (k_max < 1 || k_max >= n) {
    std::ostringstream os;
    os << "hill_trajectory: k_max=" << k_max << " outside [1, n-1] for n=" << n;
    fail(ErrorCode::kDomain, os.str());
  }
  if (!(magnitudes.largest(k_max + 1) > 0.0)) {
    fail(ErrorCode::kDomain,
         "hill_trajectory: top k_max+1 magnitudes must be positive");
  }
  std::vector<double> out(k_max);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  double sum_log = 0.0;
  double next_log = std::log(magnitudes.largest(1));
  for (std::size_t i = 1; i <= k_max; ++i) {
    sum_log += next_log;
    next_log = std::log(magnitudes.largest(i + 1));
    const double excess = sum_log / static_cast<double>(i) - next_log;
    out[i - 1] = excess > 0.0 ? 1.0 / excess : nan;
  }
  return out;
}

double rt_statistic(std::span<const double> trajectory, std::size_t k,
                    double theta) {
  require_theta(theta);
  if (k < 1 || k > trajectory.size()) {
    std::ostringstream os;
    os << "rt_statistic: k=" << k << " outside [1, " << trajectory.size() << "]";
    fail(ErrorCode::kDomain, os.str());
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (!std::isfinite(trajectory[i])) {
      std::ostringstream os;
      os << "rt_statistic: non-finite estimate at k=" << i + 1;
      fail(ErrorCode::kDegenerateTrajectory, os.str());
    }
  }
  std::vector<double> scratch;
  return rt_with_scratch(trajectory, k, rt_weights(k, theta), scratch);
}

KSelection select_k_star(std::span<const double> trajectory, double theta,
                         std::size_t k_min, std::size_t k_max) {
  require_theta(theta);
  if (k_min < 1 || k_min > k_max || k_max > trajectory.size()) {
    std::ostringstream os;
    os << "select_k_star: need 1 <= k_min <= k_max <= " << trajectory.size()
       << ", got [" << k_min << ", " << k_max << "]";
    fail(ErrorCode::kDomain, os.str());
  }

  // Every prefix that contains a non-finite estimate is skipped.
  std::size_t first_bad = trajectory.size() + 1;
  for (std::size_t i = 0; i < k_max; ++i) {
    if (!std::isfinite(trajectory[i])) {
      first_bad = i + 1;
      break;
    }
  }

  KSelection sel{theta, k_min, k_max,
                 std::vector<double>(k_max - k_min + 1,
                                     std::numeric_limits<double>::quiet_NaN()),
                 0};
  double best = std::numeric_limits<double>::infinity();
  const std::vector<double> weights = rt_weights(k_max, theta);
  std::vector<double> scratch;
  scratch.reserve(k_max);
  for (std::size_t k = k_min; k <= k_max && k < first_bad; ++k) {
    const double rt = rt_with_scratch(trajectory, k, weights, scratch);
    sel.rt_values[k - k_min] = rt;
    if (rt < best) {
      best = rt;
      sel.k_star = k;
    }
  }
  if (sel.k_star == 0) {
    std::ostringstream os;
    os << "select_k_star: every k in [" << k_min << ", " << k_max
       << "] has a degenerate trajectory prefix";
    fail(ErrorCode::kSelectionFailure, os.str());
  }
  return sel;
}

}  // namespace stablevt

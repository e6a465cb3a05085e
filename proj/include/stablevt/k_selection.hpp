#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stablevt/estimators.hpp"

namespace stablevt {

inline constexpr double kDefaultTheta = 0.3;

/// Default search window [max(15, n/50), max(k_min, n/10)], clipped to n-1.
struct KRange {
  std::size_t k_min;
  std::size_t k_max;
};
KRange default_k_range(std::size_t n);

/// Outcome of the stability-based choice of the number of upper order
/// statistics. rt_values[k - k_min] holds RT(k); skipped entries are NaN.
struct KSelection {
  double theta;
  std::size_t k_min;
  std::size_t k_max;
  std::vector<double> rt_values;
  std::size_t k_star;

  double rt(std::size_t k) const { return rt_values.at(k - k_min); }
};

/// Hill estimates for k = 1..k_max from one cumulative sum of logs; element
/// i-1 holds the estimate at k = i. Tied spacings yield NaN entries.
std::vector<double> hill_trajectory(const SortedSample& magnitudes,
                                    std::size_t k_max);

/// RT(k) = (1/k) sum_{i<=k} i^theta |a(i) - median(a(1..k))|.
double rt_statistic(std::span<const double> trajectory, std::size_t k,
                    double theta);

/// Smallest k in [k_min, k_max] minimizing RT(k). k whose prefix contains a
/// non-finite estimate is skipped; if all are skipped, kSelectionFailure.
KSelection select_k_star(std::span<const double> trajectory, double theta,
                         std::size_t k_min, std::size_t k_max);

}  // namespace stablevt

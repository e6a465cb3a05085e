#pragma once

#include <cstddef>
#include <string_view>

namespace stablevt {

enum class Target { kAlpha, kMu, kSigma };

std::string_view to_string(Target target) noexcept;

struct ConfidenceInterval {
  double lower;
  double upper;
  double level;  // 1 - a
  Target target;

  double length() const noexcept { return upper - lower; }
  bool contains(double value) const noexcept {
    return lower <= value && value <= upper;
  }
};

/// Standard normal quantile; |error| well below 1e-8 on (0, 1).
double gaussian_quantile(double p);

/// Two-sided critical value z_{a/2} for confidence level 1 - a.
double critical_value(double level);

/// (a / (1 + z/sqrt(k)), a / (1 - z/sqrt(k))). kUnboundedInterval when
/// z/sqrt(k) >= 1.
ConfidenceInterval ci_alpha(double alpha_star, std::size_t k_star, double level);

/// mu +/- z * delta * tau / sqrt(n).
ConfidenceInterval ci_location(double mu_star, double delta_star,
                               double tau_star, std::size_t n, double level);

/// exp(log s +/- z log(k/n) / (a sqrt(k))); log-symmetric about s.
ConfidenceInterval ci_scale(double sigma_star, double alpha_star,
                            std::size_t k_star, std::size_t n, double level);

}  // namespace stablevt

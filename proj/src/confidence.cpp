#include "stablevt/confidence.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/erf.hpp>

#include "stablevt/error.hpp"

namespace stablevt {
namespace {

void require_level(double level) {
  if (!(level > 0.0 && level < 1.0)) {
    std::ostringstream os;
    os << "confidence level must lie in (0, 1), got " << level;
    fail(ErrorCode::kInvalidArgument, os.str());
  }
}

}  // namespace

std::string_view to_string(Target target) noexcept {
  switch (target) {
    case Target::kAlpha: return "alpha";
    case Target::kMu: return "mu";
    case Target::kSigma: return "sigma";
  }
  return "unknown";
}

double gaussian_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    std::ostringstream os;
    os << "gaussian_quantile: p=" << p << " outside (0, 1)";
    fail(ErrorCode::kDomain, os.str());
  }
  if (p == 0.5) return 0.0;
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double critical_value(double level) {
  require_level(level);
  return gaussian_quantile(0.5 + 0.5 * level);
}

ConfidenceInterval ci_alpha(double alpha_star, std::size_t k_star,
                            double level) {
  if (k_star < 1) fail(ErrorCode::kDomain, "ci_alpha: k* must be >= 1");
  if (!(alpha_star > 0.0) || !std::isfinite(alpha_star)) {
    fail(ErrorCode::kDomain, "ci_alpha: estimate must be positive and finite");
  }
  const double half = critical_value(level) / std::sqrt(static_cast<double>(k_star));
  if (!(1.0 - half > 0.0)) {
    std::ostringstream os;
    os << "ci_alpha: k*=" << k_star << " too small for level " << level
       << " (upper bound unbounded)";
    fail(ErrorCode::kUnboundedInterval, os.str());
  }
  return {alpha_star / (1.0 + half), alpha_star / (1.0 - half), level,
          Target::kAlpha};
}

ConfidenceInterval ci_location(double mu_star, double delta_star,
                               double tau_star, std::size_t n, double level) {
  if (n < 1) fail(ErrorCode::kDomain, "ci_location: n must be >= 1");
  if (!(delta_star > 0.0) || !std::isfinite(delta_star) ||
      !(tau_star > 0.0) || !std::isfinite(tau_star) || !std::isfinite(mu_star)) {
    fail(ErrorCode::kDomain,
         "ci_location: delta and tau must be positive and finite");
  }
  const double half = critical_value(level) * delta_star * tau_star /
                      std::sqrt(static_cast<double>(n));
  return {mu_star - half, mu_star + half, level, Target::kMu};
}

ConfidenceInterval ci_scale(double sigma_star, double alpha_star,
                            std::size_t k_star, std::size_t n, double level) {
  if (k_star < 1 || k_star >= n) {
    std::ostringstream os;
    os << "ci_scale: need 1 <= k* < n, got k*=" << k_star << " n=" << n;
    fail(ErrorCode::kDomain, os.str());
  }
  if (!(sigma_star > 0.0) || !(alpha_star > 0.0)) {
    fail(ErrorCode::kDomain, "ci_scale: estimates must be positive");
  }
  const double k = static_cast<double>(k_star);
  // Negative, since k* < n.
  const double shift = critical_value(level) *
                       std::log(k / static_cast<double>(n)) /
                       (alpha_star * std::sqrt(k));
  const double log_s = std::log(sigma_star);
  return {std::exp(log_s + shift), std::exp(log_s - shift), level,
          Target::kSigma};
}

}  // namespace stablevt

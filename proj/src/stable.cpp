#include "stablevt/stable.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "stablevt/error.hpp"

namespace stablevt {
namespace {

constexpr double kPi = std::numbers::pi;

// Absolute error budget for one density evaluation.
constexpr double kDensityTolerance = 1e-8;
// Power series of the standardized density about 0. Only trusted when the
// terms fall below relative 1e-15 within a few steps.
std::optional<double> origin_series(double a, double z) {
  double sum = 0.0;
  const double z2 = z * z;
  for (int k = 0; k < 8; ++k) {
    const double term = std::exp(std::lgamma((2.0 * k + 1.0) / a) -
                                 std::lgamma(2.0 * k + 1.0) +
                                 (k == 0 ? 0.0 : k * std::log(z2)));
    sum += (k % 2 == 0 ? term : -term);
    if (term <= 1e-15 * std::abs(sum)) return sum / (kPi * a);
  }
  return std::nullopt;
}

}  // namespace

StableParams::StableParams(double alpha, double sigma, double mu)
    : alpha_(alpha), sigma_(sigma), mu_(mu) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    std::ostringstream os;
    os << "stability index must lie in (0, 2], got " << alpha;
    fail(ErrorCode::kInvalidArgument, os.str());
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    std::ostringstream os;
    os << "scale must be positive and finite, got " << sigma;
    fail(ErrorCode::kInvalidArgument, os.str());
  }
  if (!std::isfinite(mu)) {
    fail(ErrorCode::kInvalidArgument, "location must be finite");
  }
}

double tail_constant(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    std::ostringstream os;
    os << "tail constant requires 0 < alpha < 2, got " << alpha;
    fail(ErrorCode::kDomain, os.str());
  }
  return 2.0 / kPi * std::tgamma(alpha) * std::sin(kPi * alpha / 2.0);
}

double stable_transform(const StableParams& params, double angle,
                        double exponential) noexcept {
  const double a = params.alpha();
  double standard;
  if (a == 1.0) {
    standard = std::tan(angle);
  } else {
    standard = std::sin(a * angle) / std::pow(std::cos(angle), 1.0 / a) *
               std::pow(std::cos((1.0 - a) * angle) / exponential,
                        (1.0 - a) / a);
  }
  return params.mu() + params.sigma() * standard;
}

std::vector<double> sample_symmetric(const StableParams& params,
                                     std::size_t n, RandomStream& stream) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "sample size must be >= 1");
  std::vector<double> out;
  out.reserve(n);
  while (out.size() < n) {
    const double angle = kPi * (stream.uniform() - 0.5);
    const double w = stream.exponential();
    const double x = stable_transform(params, angle, w);
    if (std::isfinite(x)) out.push_back(x);
  }
  return out;
}

std::complex<double> symmetric_cf(const StableParams& params, double t) {
  const double modulus =
      std::exp(-std::pow(params.sigma() * std::abs(t), params.alpha()));
  return std::polar(modulus, params.mu() * t);
}

double density(const StableParams& params, double x) {
  const double a = params.alpha();
  const double s = params.sigma();
  const double z = std::abs(x - params.mu()) / s;

  if (a == 2.0) return std::exp(-z * z / 4.0) / (2.0 * std::sqrt(kPi) * s);
  if (a == 1.0) return 1.0 / (kPi * s * (1.0 + z * z));
  if (const auto series = origin_series(a, z)) return *series / s;

  // f(z) = a / (pi |a - 1| z) * int_0^{pi/2} g exp(-g) dtheta, with g monotone
  // in theta. Work with log g to survive the endpoint singularities.
  const double p = a / (a - 1.0);
  const double log_z = std::log(z);
  auto log_g = [&](double th) {
    return p * (std::log(std::cos(th)) - std::log(std::sin(a * th))) +
           std::log(std::cos((a - 1.0) * th)) - std::log(std::cos(th)) +
           p * log_z;
  };
  auto integrand = [&](double th) {
    const double lg = log_g(th);
    if (!std::isfinite(lg)) return 0.0;
    const double v = std::exp(lg - std::exp(lg));
    return std::isfinite(v) ? v : 0.0;
  };

  // The integrand peaks where g = 1; split there.
  constexpr double kEnd = kPi / 2.0;
  double lo = kEnd * 1e-12;
  double hi = kEnd * (1.0 - 1e-12);
  double peak = kEnd / 2.0;
  const double g_lo = log_g(lo);
  const double g_hi = log_g(hi);
  if ((g_lo > 0.0) != (g_hi > 0.0)) {
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
      const double mid = 0.5 * (lo + hi);
      ((log_g(mid) > 0.0) == (g_lo > 0.0) ? lo : hi) = mid;
    }
    peak = 0.5 * (lo + hi);
  }

  // Each half has the peak at an endpoint, where tanh-sinh clusters nodes.
  thread_local boost::math::quadrature::tanh_sinh<double> quadrature;
  double err_left = 0.0;
  double err_right = 0.0;
  const double left = quadrature.integrate(integrand, 0.0, peak, 1e-12, &err_left);
  const double right = quadrature.integrate(integrand, peak, kEnd, 1e-12, &err_right);
  const double scale = a / (kPi * std::abs(a - 1.0) * z * s);
  const double total = scale * (left + right);
  const double error = scale * (err_left + err_right);
  if (!(error <= kDensityTolerance) || !std::isfinite(total)) {
    std::ostringstream os;
    os << "density quadrature did not converge at x=" << x << " alpha=" << a
       << ": error estimate " << error << " (budget " << kDensityTolerance << ")";
    fail(ErrorCode::kNumerical, os.str());
  }
  return std::max(0.0, total);
}

}  // namespace stablevt

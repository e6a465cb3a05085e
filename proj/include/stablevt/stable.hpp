#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "stablevt/random_stream.hpp"

namespace stablevt {

/// Parameters of a symmetric stable law S_alpha(sigma, 0, mu).
class StableParams {
 public:
  /// Throws Error(kInvalidArgument) unless 0 < alpha <= 2 and sigma > 0.
  StableParams(double alpha, double sigma, double mu = 0.0);

  double alpha() const noexcept { return alpha_; }
  double sigma() const noexcept { return sigma_; }
  double mu() const noexcept { return mu_; }
  /// Skewness; always zero for this model.
  constexpr double beta() const noexcept { return 0.0; }

  /// Limiting share of |X| tail mass in the upper tail, (1 + beta) / 2.
  constexpr double upper_tail_share() const noexcept { return 0.5; }

  friend bool operator==(const StableParams&, const StableParams&) = default;

 private:
  double alpha_;
  double sigma_;
  double mu_;
};

/// Tail constant (2/pi) Gamma(alpha) sin(pi alpha / 2) for 0 < alpha < 2.
double tail_constant(double alpha);

/// Chambers-Mallows-Stuck map for beta = 0. `angle` lies in (-pi/2, pi/2),
/// `exponential` is a positive standard-exponential draw.
double stable_transform(const StableParams& params, double angle,
                        double exponential) noexcept;

/// n independent draws from `params`. Output depends only on
/// (params, n, stream state).
std::vector<double> sample_symmetric(const StableParams& params,
                                     std::size_t n, RandomStream& stream);

std::complex<double> symmetric_cf(const StableParams& params, double t);

/// Density via the non-oscillatory integral representation on (0, pi/2).
/// Closed forms for alpha = 1, alpha = 2 and the origin.
/// Throws Error(kNumerical) if the quadrature error budget is not met.
double density(const StableParams& params, double x);

}  // namespace stablevt

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hbtfisher {

/// Two unit-normalized Gaussian point spread functions of common width
/// `sigma`. PSF A is anchored at x = 0; PSF B is centered at x = d, and all
/// d-derivatives in the library refer to moving B while A stays fixed.
struct GaussianPsfPair {
  double sigma;
  double d;

  /// Unit width, fully overlapped.
  GaussianPsfPair() : sigma(1.0), d(0.0) {}

  GaussianPsfPair(double sigma_, double d_) : sigma(sigma_), d(d_) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
      throw std::invalid_argument("GaussianPsfPair: sigma must be > 0");
    if (!(d >= 0.0) || !std::isfinite(d))
      throw std::invalid_argument("GaussianPsfPair: d must be >= 0");
  }
};

inline double gaussian_pdf(double x, double sigma) {
  const double u = x / sigma;
  return std::exp(-0.5 * u * u) /
         (std::sqrt(2.0 * std::numbers::pi) * sigma);
}

/// P_A(x) = exp(-x^2 / 2 sigma^2) / (sqrt(2 pi) sigma)
inline double psf_a(double x, const GaussianPsfPair& pair) {
  return gaussian_pdf(x, pair.sigma);
}

/// P_B(x) = P_A(x - d)
inline double psf_b(double x, const GaussianPsfPair& pair) {
  return gaussian_pdf(x - pair.d, pair.sigma);
}

/// d P_B / d d = P_B(x) (x - d) / sigma^2. P_A carries no d-dependence.
inline double dpsf_b_dd(double x, const GaussianPsfPair& pair) {
  return psf_b(x, pair) * (x - pair.d) / (pair.sigma * pair.sigma);
}

/// Closed form of the Gaussian product integral
/// I_ov = int P_A P_B dx = exp(-d^2 / 4 sigma^2) / (2 sqrt(pi) sigma)
inline double overlap_integral(const GaussianPsfPair& pair) {
  return std::exp(-pair.d * pair.d / (4.0 * pair.sigma * pair.sigma)) /
         (2.0 * std::sqrt(std::numbers::pi) * pair.sigma);
}

/// d I_ov / d d = -(d / 2 sigma^2) I_ov
inline double doverlap_integral_dd(const GaussianPsfPair& pair) {
  return -(pair.d / (2.0 * pair.sigma * pair.sigma)) *
         overlap_integral(pair);
}

/// Integration window used throughout: Gaussian mass outside
/// [-10 sigma, d + 10 sigma] is below 1e-22, negligible against every
/// tolerance in the library.
inline double integration_lo(const GaussianPsfPair& pair) {
  return -10.0 * pair.sigma;
}
inline double integration_hi(const GaussianPsfPair& pair) {
  return pair.d + 10.0 * pair.sigma;
}

}  // namespace hbtfisher

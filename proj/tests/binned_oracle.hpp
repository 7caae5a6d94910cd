#pragma once

// Independent Fisher-information oracle. Discretizes the event
// distributions on a fine uniform grid and differentiates their logarithm
// by central finite differences; shares no code with the library's
// closed-form and quadrature paths.

#include <cmath>
#include <numbers>
#include <vector>

namespace binned_oracle {

struct Result {
  double normalization = 0.0;
  double f_normalized = 0.0;
  double fisher = 0.0;  // normalization * f_normalized (one repetition)
};

namespace detail {

inline double gauss(double x, double sigma) {
  return std::exp(-x * x / (2.0 * sigma * sigma)) /
         (sigma * std::sqrt(2.0 * std::numbers::pi));
}

inline double p_alpha(double x, double d, double sigma, double eta) {
  const double a = gauss(x, sigma);
  const double b = gauss(x - d, sigma);
  const double miss = 1.0 - eta;
  const double pair_weight = eta * miss + 0.25 * (1.0 - miss * miss);
  return 0.5 * eta * (a + b) + a * b * pair_weight;
}

inline double p_gamma(double x, double d, double sigma, double eta) {
  return eta * eta * gauss(x, sigma) * gauss(x - d, sigma);
}

}  // namespace detail

/// Fisher information per repetition for the alpha/beta(/gamma) events at
/// separation d. bins uniform cells over [-10, 20]; the log-derivative uses
/// step h around d, with the normalization's d-dependence included.
inline Result fisher(double d, double eta, double sigma, bool include_gamma,
                     int bins = 4000, double h = 1e-5) {
  const double lo = -10.0;
  const double hi = 20.0;
  const double width = (hi - lo) / bins;

  const auto normalization = [&](double dd) {
    double z = 0.0;
    for (int i = 0; i < bins; ++i) {
      const double x = lo + (i + 0.5) * width;
      z += 2.0 * detail::p_alpha(x, dd, sigma, eta);
      if (include_gamma) z += detail::p_gamma(x, dd, sigma, eta);
    }
    return z * width;
  };

  const double z0 = normalization(d);
  const double z_plus = normalization(d + h);
  const double z_minus = normalization(d - h);

  double f = 0.0;
  for (int i = 0; i < bins; ++i) {
    const double x = lo + (i + 0.5) * width;
    const auto accumulate = [&](auto&& intensity) {
      const double c0 = intensity(x, d, sigma, eta) / z0;
      const double cp = intensity(x, d + h, sigma, eta) / z_plus;
      const double cm = intensity(x, d - h, sigma, eta) / z_minus;
      if (c0 <= 0.0 || cp <= 0.0 || cm <= 0.0) return;
      const double dlog = (std::log(cp) - std::log(cm)) / (2.0 * h);
      f += width * c0 * dlog * dlog;
    };
    accumulate(detail::p_alpha);
    accumulate(detail::p_alpha);  // beta mirrors alpha
    if (include_gamma) accumulate(detail::p_gamma);
  }

  Result r;
  r.normalization = z0;
  r.f_normalized = f;
  r.fisher = z0 * f;
  return r;
}

}  // namespace binned_oracle

#include "hbtfisher/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hbtfisher/errors.hpp"

namespace hbtfisher {
namespace {

constexpr int kExactRowLimit = 66;    // last Pascal row that fits in uint64
constexpr int kExactWeightLimit = 33;  // last n whose C(n,k)^2 sum fits

void validate_coherent(const CoherentConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("coherent: n must be >= 1");
  if (!(cfg.mean_photons >= 0.0))
    throw std::invalid_argument("coherent: mean_photons must be >= 0");
  if (!(cfg.field_scale > 0.0))
    throw std::invalid_argument("coherent: field_scale must be > 0");
}

}  // namespace

std::uint64_t binomial_exact(int n, int k) {
  if (n < 0 || n > kExactRowLimit || k < 0 || k > n)
    throw std::invalid_argument("binomial_exact: need 0 <= k <= n <= 66");
  std::vector<std::uint64_t> row(static_cast<std::size_t>(n) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j >= 1; --j) row[j] += row[j - 1];
  return row[static_cast<std::size_t>(k)];
}

double log_binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n)
    throw std::invalid_argument("log_binomial: need 0 <= k <= n");
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
         std::lgamma(n - k + 1.0);
}

std::vector<double> binomial_sq_weights(int n) {
  if (n < 1) throw std::invalid_argument("binomial_sq_weights: n must be >= 1");
  std::vector<double> weights(static_cast<std::size_t>(n) + 1);
  if (n <= kExactWeightLimit) {
    for (int k = 0; k <= n; ++k) {
      const double c = static_cast<double>(binomial_exact(n, k));
      weights[static_cast<std::size_t>(k)] = c * c;
    }
  } else {
    for (int k = 0; k <= n; ++k)
      weights[static_cast<std::size_t>(k)] = std::exp(2.0 * log_binomial(n, k));
  }
  return weights;
}

double central_binomial(int n) {
  if (n < 0) throw std::invalid_argument("central_binomial: n must be >= 0");
  if (n <= kExactWeightLimit)
    return static_cast<double>(binomial_exact(2 * n, n));
  return std::exp(log_binomial(2 * n, n));
}

double interior_weight_sum(int n) {
  if (n < 1) throw std::invalid_argument("interior_weight_sum: n must be >= 1");
  return central_binomial(n) - 2.0;
}

double cascade_prefactor(int n, PrefactorConvention convention) {
  if (n < 1) throw std::invalid_argument("cascade_prefactor: n must be >= 1");
  const double exponent =
      convention == PrefactorConvention::PaperVerbatim
          ? (1.0 - n) * (n + 2.0) / 4.0
          : -(n - 1.0) * (n + 2.0) / 2.0;
  return std::exp2(exponent);
}

double nth_order_intensity(double x, const CoherentConfig& cfg) {
  validate_coherent(cfg);
  const double pa = psf_a(x, cfg.pair);
  const double pb = psf_b(x, cfg.pair);
  const double bracket = pb + pa + interior_weight_sum(cfg.n) * pa * pb;
  const double amplitude = cascade_prefactor(cfg.n, cfg.prefactor_convention) *
                           std::pow(cfg.field_scale, cfg.n) *
                           std::pow(cfg.mean_photons, cfg.n);
  return amplitude * bracket;
}

double overlap_ratio(double x, int n, const GaussianPsfPair& pair) {
  if (n < 1) throw std::invalid_argument("overlap_ratio: n must be >= 1");
  const double pa = psf_a(x, pair);
  const double pb = psf_b(x, pair);
  const double denom = pa + pb;
  if (denom <= 0.0)
    throw ZeroDenominatorError(
        "overlap_ratio: P_A + P_B underflowed to zero at x = " +
        std::to_string(x));
  return interior_weight_sum(n) * pa * pb / denom;
}

double phase_average_oracle(int n, double intensity_a, double intensity_b) {
  if (n < 1)
    throw std::invalid_argument("phase_average_oracle: n must be >= 1");
  if (!(intensity_a >= 0.0) || !(intensity_b >= 0.0))
    throw std::invalid_argument(
        "phase_average_oracle: intensities must be >= 0");
  const int points = std::max(64, 4 * n);
  const double cross = 2.0 * std::sqrt(intensity_a * intensity_b);
  double sum = 0.0;
  for (int j = 0; j < points; ++j) {
    const double psi = 2.0 * std::numbers::pi * j / points;
    sum += std::pow(intensity_a + intensity_b + cross * std::cos(psi),
                    static_cast<double>(n));
  }
  return sum / points;
}

}  // namespace hbtfisher

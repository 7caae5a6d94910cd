#pragma once

#include <cstdint>
#include <vector>

#include "hbtfisher/psf.hpp"

namespace hbtfisher {

/// Prefactor convention for the n-detector splitter cascade. The two
/// conventions differ only in the power of 2 multiplying the intensity;
/// overlap_ratio is independent of the choice.
enum class PrefactorConvention { PaperVerbatim, DerivedCascade };

/// Parameters of the n-detector coherent-state measurement.
struct CoherentConfig {
  int n = 1;                  // number of single-photon detectors, >= 1
  double mean_photons = 1.0;  // |z|^2, >= 0
  GaussianPsfPair pair;
  PrefactorConvention prefactor_convention = PrefactorConvention::PaperVerbatim;
  double field_scale = 1.0;  // |xi|^2, > 0
};

/// Exact C(n, k) by Pascal's triangle. Valid for 0 <= k <= n <= 66; every
/// entry through C(66, 33) fits in 64 bits. Throws std::invalid_argument
/// outside that range.
std::uint64_t binomial_exact(int n, int k);

/// log C(n, k) via lgamma; usable for any n where the exact path overflows.
double log_binomial(int n, int k);

/// The weights C(n, k)^2 for k = 0..n. Integer-exact arithmetic up to
/// n = 33 (the last row whose squared entries and their sum fit in 64 bits),
/// lgamma beyond; the two paths agree to rel. 1e-12 at the crossover.
std::vector<double> binomial_sq_weights(int n);

/// C(2n, n) = sum_k C(n, k)^2.
double central_binomial(int n);

/// sum_{k=1}^{n-1} C(n, k)^2 = C(2n, n) - 2. Zero for n = 1.
double interior_weight_sum(int n);

/// Power-of-2 attenuation accumulated through the splitter cascade:
/// PaperVerbatim -> 2^{(1-n)(n+2)/4}, DerivedCascade -> 2^{-(n-1)(n+2)/2}.
/// Both give 1 at n = 1.
double cascade_prefactor(int n, PrefactorConvention convention);

/// n-fold coincidence intensity at position x:
/// prefactor * |xi|^{2n} |z|^{2n} * [P_B + P_A + sum_interior C(n,k)^2 P_A P_B].
/// The end terms carry single-PSF weight, interior terms the overlap weight.
/// Strictly proportional to mean_photons^n.
double nth_order_intensity(double x, const CoherentConfig& cfg);

/// Overlap contribution relative to the two single-PSF end terms:
/// [C(2n, n) - 2] * P_A P_B / (P_A + P_B). Independent of the prefactor
/// convention and of mean_photons; strictly increasing in n wherever
/// P_A P_B > 0. Throws ZeroDenominatorError when P_A + P_B underflows.
double overlap_ratio(double x, int n, const GaussianPsfPair& pair);

/// Independent check of the binomial structure: numerically averages
/// (A + B + 2 sqrt(AB) cos psi)^n over psi in [0, 2pi). Equals
/// sum_k C(n, k)^2 A^k B^{n-k} to rel. 1e-9. The integrand is a trig
/// polynomial of degree n, so the periodic trapezoid rule with more than
/// n points is exact up to rounding.
double phase_average_oracle(int n, double intensity_a, double intensity_b);

}  // namespace hbtfisher

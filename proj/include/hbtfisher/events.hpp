#pragma once

#include "hbtfisher/psf.hpp"

namespace hbtfisher {

/// Which exclusive detection events enter the analysis:
/// AB  - only the single-click events alpha and beta,
/// ABG - alpha, beta, and the coincidence event gamma.
enum class EventSet { AB, ABG };

/// Weighting of the two-photon routing outcomes.
///
/// PaperModel uses the correlation-function weight P_A P_B for the
/// one-photon-per-path outcome; ClassicalRouting uses the weight of two
/// independent 50:50 path choices (half of that). The two coincide for the
/// single-click events at eta = 1 but differ in the coincidence rate by a
/// factor of 2. PaperModel is the default; ClassicalRouting is what the
/// Monte Carlo sampler realizes.
enum class Routing { PaperModel, ClassicalRouting };

struct DetectionModel {
  double eta = 1.0;
  EventSet event_set = EventSet::ABG;
  Routing routing = Routing::PaperModel;
};

/// Per-position probabilities of the exclusive events and their analytic
/// d-derivatives. p_alpha == p_beta always (50:50 splitter symmetry).
struct EventIntensities {
  double p_alpha = 0.0;
  double p_beta = 0.0;
  double p_gamma = 0.0;
  double dp_alpha_dd = 0.0;
  double dp_beta_dd = 0.0;
  double dp_gamma_dd = 0.0;
};

struct EventFlux {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// Smallest sigma for which PSF values can be read as per-emission
/// detection probabilities (peak value 1/(sigma sqrt(2 pi)) <= 1).
double sigma_floor();

/// Throws SigmaTooSmallError / EtaOutOfRangeError when the probability
/// reading of the model breaks down.
void validate_detection_inputs(const GaussianPsfPair& pair,
                               const DetectionModel& model);

/// Single-detector intensity behind the splitter: (P_A + P_B) / 2.
/// Independent of eta.
double single_photon_intensity(double x, const GaussianPsfPair& pair);

/// One photon in each output path: P_A(x) P_B(x).
double coincidence_intensity(double x, const GaussianPsfPair& pair);

/// Both photons in one named output path: P_A(x) P_B(x) / 4.
double same_path_pair_intensity(double x, const GaussianPsfPair& pair);

/// Coefficient of P_A P_B in p_alpha, and of P_A P_B in p_gamma, for the
/// chosen routing. Exposed for reuse by the flux and normalization code.
double alpha_pair_coefficient(double eta, Routing routing);
double gamma_pair_coefficient(double eta, Routing routing);

EventIntensities event_intensities(double x, const GaussianPsfPair& pair,
                                   const DetectionModel& model);

/// Closed-form x-integrals of the event intensities:
/// flux_alpha = flux_beta = eta + I_ov * alpha_pair_coefficient,
/// flux_gamma = gamma_pair_coefficient * I_ov.
EventFlux event_flux(const GaussianPsfPair& pair, const DetectionModel& model);

/// d/dd of event_flux (the eta term is d-independent, only I_ov moves).
EventFlux event_flux_ddd(const GaussianPsfPair& pair,
                         const DetectionModel& model);

}  // namespace hbtfisher

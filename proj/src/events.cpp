#include "hbtfisher/events.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hbtfisher/errors.hpp"

namespace hbtfisher {

double sigma_floor() { return 1.0 / std::sqrt(2.0 * std::numbers::pi); }

void validate_detection_inputs(const GaussianPsfPair& pair,
                               const DetectionModel& model) {
  if (pair.sigma < sigma_floor())
    throw SigmaTooSmallError(
        "sigma = " + std::to_string(pair.sigma) +
        " is below 1/sqrt(2 pi); PSF peak would exceed 1 and the "
        "intensities stop being probabilities");
  if (!(model.eta >= 0.0 && model.eta <= 1.0))
    throw EtaOutOfRangeError("eta = " + std::to_string(model.eta) +
                             " is outside [0, 1]");
}

double single_photon_intensity(double x, const GaussianPsfPair& pair) {
  return 0.5 * (psf_a(x, pair) + psf_b(x, pair));
}

double coincidence_intensity(double x, const GaussianPsfPair& pair) {
  return psf_a(x, pair) * psf_b(x, pair);
}

double same_path_pair_intensity(double x, const GaussianPsfPair& pair) {
  return 0.25 * coincidence_intensity(x, pair);
}

double alpha_pair_coefficient(double eta, Routing routing) {
  const double miss = 1.0 - eta;
  const double same_path = 0.25 * (1.0 - miss * miss);
  const double split = routing == Routing::PaperModel ? eta * miss
                                                      : 0.5 * eta * miss;
  return split + same_path;
}

double gamma_pair_coefficient(double eta, Routing routing) {
  return routing == Routing::PaperModel ? eta * eta : 0.5 * eta * eta;
}

EventIntensities event_intensities(double x, const GaussianPsfPair& pair,
                                   const DetectionModel& model) {
  validate_detection_inputs(pair, model);

  const double pa = psf_a(x, pair);
  const double pb = psf_b(x, pair);
  const double dpb = dpsf_b_dd(x, pair);
  const double eta = model.eta;
  const double ca = alpha_pair_coefficient(eta, model.routing);
  const double cg = gamma_pair_coefficient(eta, model.routing);

  EventIntensities out;
  out.p_alpha = 0.5 * eta * (pa + pb) + pa * pb * ca;
  out.p_beta = out.p_alpha;
  out.p_gamma = cg * pa * pb;
  out.dp_alpha_dd = 0.5 * eta * dpb + pa * dpb * ca;
  out.dp_beta_dd = out.dp_alpha_dd;
  out.dp_gamma_dd = cg * pa * dpb;
  return out;
}

EventFlux event_flux(const GaussianPsfPair& pair,
                     const DetectionModel& model) {
  validate_detection_inputs(pair, model);
  const double iov = overlap_integral(pair);
  EventFlux flux;
  flux.alpha = model.eta + iov * alpha_pair_coefficient(model.eta, model.routing);
  flux.beta = flux.alpha;
  flux.gamma = gamma_pair_coefficient(model.eta, model.routing) * iov;
  return flux;
}

EventFlux event_flux_ddd(const GaussianPsfPair& pair,
                         const DetectionModel& model) {
  validate_detection_inputs(pair, model);
  const double diov = doverlap_integral_dd(pair);
  EventFlux flux;
  flux.alpha = diov * alpha_pair_coefficient(model.eta, model.routing);
  flux.beta = flux.alpha;
  flux.gamma = gamma_pair_coefficient(model.eta, model.routing) * diov;
  return flux;
}

}  // namespace hbtfisher

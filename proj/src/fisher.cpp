#include "hbtfisher/fisher.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hbtfisher/errors.hpp"
#include "hbtfisher/quadrature.hpp"

namespace hbtfisher {
namespace {

constexpr double kDegenerateZ = 1e-300;
constexpr double kIntensityFloor = 1e-300;
constexpr double kQuadTargetPerEvent = 1e-10;
constexpr double kQuadErrorCeiling = 1e-6;

struct IntensityTerm {
  double value;
  double ddd;
};

IntensityTerm event_term(double x, Event event, const GaussianPsfPair& pair,
                         const DetectionModel& model) {
  const EventIntensities ei = event_intensities(x, pair, model);
  switch (event) {
    case Event::Alpha:
      return {ei.p_alpha, ei.dp_alpha_dd};
    case Event::Beta:
      return {ei.p_beta, ei.dp_beta_dd};
    case Event::Gamma:
      return {ei.p_gamma, ei.dp_gamma_dd};
  }
  throw std::invalid_argument("unknown event");
}

void require_event_in_set(Event event, const DetectionModel& model) {
  if (event == Event::Gamma && model.event_set == EventSet::AB)
    throw std::invalid_argument(
        "event gamma is outside the configured AB event set");
}

}  // namespace

double normalization_constant(const GaussianPsfPair& pair,
                              const DetectionModel& model) {
  const EventFlux flux = event_flux(pair, model);
  double z = flux.alpha + flux.beta;
  if (model.event_set == EventSet::ABG) z += flux.gamma;
  return z;
}

double normalization_constant_ddd(const GaussianPsfPair& pair,
                                  const DetectionModel& model) {
  const EventFlux dflux = event_flux_ddd(pair, model);
  double dz = dflux.alpha + dflux.beta;
  if (model.event_set == EventSet::ABG) dz += dflux.gamma;
  return dz;
}

double normalized_event_distribution(double x, Event event,
                                     const ExperimentConfig& cfg) {
  require_event_in_set(event, cfg.model);
  const double z = normalization_constant(cfg.pair, cfg.model);
  if (z < kDegenerateZ)
    throw DegenerateNormalizationError(
        "total event flux is " + std::to_string(z) +
        "; normalized distributions are undefined");
  return event_term(x, event, cfg.pair, cfg.model).value / z;
}

double normalized_event_distribution_ddd(double x, Event event,
                                         const ExperimentConfig& cfg) {
  require_event_in_set(event, cfg.model);
  const double z = normalization_constant(cfg.pair, cfg.model);
  if (z < kDegenerateZ)
    throw DegenerateNormalizationError(
        "total event flux is " + std::to_string(z) +
        "; normalized distributions are undefined");
  const double dz = normalization_constant_ddd(cfg.pair, cfg.model);
  const IntensityTerm term = event_term(x, event, cfg.pair, cfg.model);
  return (term.ddd * z - term.value * dz) / (z * z);
}

FisherResult fisher_information(const ExperimentConfig& cfg) {
  validate_detection_inputs(cfg.pair, cfg.model);
  if (cfg.repeats < 1)
    throw std::invalid_argument("repeats must be >= 1");

  const double z = normalization_constant(cfg.pair, cfg.model);
  if (z < kDegenerateZ)
    throw DegenerateNormalizationError(
        "total event flux is " + std::to_string(z) +
        " (eta = " + std::to_string(cfg.model.eta) +
        "); Fisher information is undefined");
  const double dz = normalization_constant_ddd(cfg.pair, cfg.model);

  const double lo = integration_lo(cfg.pair);
  const double hi = integration_hi(cfg.pair);

  const auto event_integral = [&](Event event) {
    return integrate(
        [&](double x) {
          const IntensityTerm term = event_term(x, event, cfg.pair, cfg.model);
          const double c = term.value / z;
          if (c < kIntensityFloor) return 0.0;
          const double dc = (term.ddd * z - term.value * dz) / (z * z);
          return dc * dc / c;
        },
        lo, hi, kQuadTargetPerEvent);
  };

  // alpha and beta share one integrand; integrate once and count it twice.
  const QuadratureResult qa = event_integral(Event::Alpha);
  double f = 2.0 * qa.value;
  double err = 2.0 * qa.error_estimate;
  if (cfg.model.event_set == EventSet::ABG) {
    const QuadratureResult qg = event_integral(Event::Gamma);
    f += qg.value;
    err += qg.error_estimate;
  }
  if (err > kQuadErrorCeiling)
    throw QuadratureFailureError("quadrature error estimate " +
                                 std::to_string(err) + " exceeds 1e-6");

  FisherResult out;
  out.normalization = z;
  out.f_normalized = f;
  out.n_eff = static_cast<double>(cfg.repeats) * z;
  out.fisher = static_cast<double>(cfg.repeats) * (z * f);
  out.quad_error_estimate = err;
  return out;
}

std::vector<FisherSweepRow> fisher_sweep(const ExperimentConfig& base,
                                         SweepAxis axis,
                                         std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("sweep grid is empty");

  std::vector<FisherSweepRow> rows;
  rows.reserve(grid.size());
  for (const double value : grid) {
    ExperimentConfig cfg = base;
    if (axis == SweepAxis::Eta) {
      cfg.model.eta = value;
    } else {
      cfg.pair = GaussianPsfPair(base.pair.sigma, value);
    }
    try {
      rows.push_back({value, fisher_information(cfg)});
    } catch (const ModelError& e) {
      throw ModelError(e.name(), "at sweep value " + std::to_string(value) +
                                     ": " + e.what());
    }
  }
  return rows;
}

}  // namespace hbtfisher

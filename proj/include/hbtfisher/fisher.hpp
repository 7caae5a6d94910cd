#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hbtfisher/events.hpp"
#include "hbtfisher/psf.hpp"

namespace hbtfisher {

enum class Event { Alpha, Beta, Gamma };

struct ExperimentConfig {
  GaussianPsfPair pair;
  DetectionModel model;
  std::int64_t repeats = 1;  // imaging repetitions M
};

/// Output of the total-Fisher-information computation:
///   normalization   Z = sum_m int P_m dx over the active event set,
///   f_normalized    Fisher information of the normalized distributions C_m,
///   n_eff           M * Z,
///   fisher          M * (Z * f_normalized)  -- M enters exactly once, so
///                   fisher(M) == M * fisher(1) down to the last bit.
struct FisherResult {
  double normalization = 0.0;
  double f_normalized = 0.0;
  double n_eff = 0.0;
  double fisher = 0.0;
  double quad_error_estimate = 0.0;
};

/// Sum of the active event fluxes, Z, and its d-derivative (through I_ov).
double normalization_constant(const GaussianPsfPair& pair,
                              const DetectionModel& model);
double normalization_constant_ddd(const GaussianPsfPair& pair,
                                  const DetectionModel& model);

/// C_m(x) = P_m(x) / Z. The event must belong to the configured event set.
double normalized_event_distribution(double x, Event event,
                                     const ExperimentConfig& cfg);

/// Analytic d-derivative of C_m by the quotient rule; the normalization's
/// d-dependence (through the overlap integral) is included.
double normalized_event_distribution_ddd(double x, Event event,
                                         const ExperimentConfig& cfg);

FisherResult fisher_information(const ExperimentConfig& cfg);

enum class SweepAxis { Eta, D };

struct FisherSweepRow {
  double value = 0.0;
  FisherResult result;
};

/// One fisher_information call per grid value, rows in grid order. Errors
/// from a grid point are rethrown with the offending value in the message.
std::vector<FisherSweepRow> fisher_sweep(const ExperimentConfig& base,
                                         SweepAxis axis,
                                         std::span<const double> grid);

}  // namespace hbtfisher

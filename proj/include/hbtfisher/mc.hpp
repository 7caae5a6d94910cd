#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hbtfisher/events.hpp"
#include "hbtfisher/psf.hpp"

namespace hbtfisher {

/// Outcome indices shared by counts/freq/ci arrays.
inline constexpr std::size_t kMcAlpha = 0;
inline constexpr std::size_t kMcBeta = 1;
inline constexpr std::size_t kMcGamma = 2;
inline constexpr std::size_t kMcNone = 3;
inline constexpr std::array<const char*, 4> kMcOutcomeNames{"alpha", "beta",
                                                            "gamma", "none"};

struct McConfig {
  std::int64_t trials = 1;
  std::uint64_t seed = 0;
  double x = 0.0;
  GaussianPsfPair pair;
  double eta = 1.0;
};

/// Empirical outcome tallies. Counts are mutually exclusive and sum to
/// trials; ci_halfwidth is the 3-sigma binomial interval 3*sqrt(p(1-p)/N)
/// at the observed frequency.
struct McEstimate {
  std::array<std::int64_t, 4> counts{};
  std::array<double, 4> freq{};
  std::array<double, 4> ci_halfwidth{};
  std::int64_t trials = 0;
};

/// One simulated experiment. Per trial: a photon pair is emitted with
/// probability P_A(x)P_B(x), a single photon with probability P_A(x)+P_B(x);
/// each photon routes to either detector with probability 1/2 and is
/// absorbed with probability eta; a detector clicks iff it absorbs at least
/// one photon. The exclusive click classes then reproduce the
/// ClassicalRouting closed forms exactly. Deterministic for fixed
/// (seed, trials) regardless of evaluation order.
/// Throws SigmaTooSmallError when the emission probabilities at x cannot
/// form a distribution (P_A + P_B + P_A P_B > 1).
McEstimate simulate_events(const McConfig& cfg);

struct EventComparison {
  std::string event;
  std::int64_t count = 0;
  double freq = 0.0;
  double ci_halfwidth = 0.0;
  double classical = 0.0;    // closed-form ClassicalRouting probability
  double paper = 0.0;        // PaperModel value, shown side by side
  double paper_delta = 0.0;  // paper - classical
  bool pass = false;
};

struct ValidationReport {
  McEstimate estimate;
  std::array<EventComparison, 4> rows;
  bool pass = false;
};

/// Runs simulate_events and compares each outcome frequency with the
/// ClassicalRouting closed form. An outcome passes when the discrepancy is
/// within the wider of the observed-frequency and analytic-probability
/// 3-sigma half-widths (the analytic one covers zero-count cells). The
/// PaperModel column is diagnostic only; its gamma weight differs by the
/// routing factor 2 and the weights do not sum to 1.
ValidationReport validate_against_analytic(const McConfig& cfg);

struct MlStudyResult {
  double variance = 0.0;       // across-sample variance of the estimate, ddof 1
  double crb_reference = 0.0;  // multinomial CRB for the same grid and counts
  double mean_estimate = 0.0;
  std::int64_t samples = 0;
  std::int64_t trials_per_sample = 0;
  std::vector<double> grid;  // x-grid used, reported for reproducibility
};

/// Estimator-variance study. Each sample draws multinomial outcome counts
/// on a fixed 64-point x-grid over [-5 sigma, d_true + 5 sigma] from the
/// ClassicalRouting model at d_true, then maximizes the multinomial
/// log-likelihood over d in [0, 2 d_true] by golden-section search
/// (bracket tolerance 1e-5). crb_reference is 1/F for the matching
/// multinomial Fisher information, so both outputs are variances.
/// Throws OptimizerNonConvergenceError if a search exhausts its iteration
/// budget before the bracket shrinks below tolerance.
MlStudyResult ml_variance_study(double d_true, double eta,
                                std::int64_t samples,
                                std::int64_t trials_per_sample,
                                std::uint64_t seed, double sigma = 1.0);

}  // namespace hbtfisher

#include "hbtfisher/mc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "hbtfisher/errors.hpp"
#include "hbtfisher/grid.hpp"
#include "hbtfisher/rng.hpp"

namespace hbtfisher {
namespace {

constexpr double kProbFloor = 1e-300;

double binomial_ci_halfwidth(double p, std::int64_t trials) {
  return 3.0 * std::sqrt(std::max(p * (1.0 - p), 0.0) /
                         static_cast<double>(trials));
}

std::array<double, 4> outcome_probabilities(double x,
                                            const GaussianPsfPair& pair,
                                            const DetectionModel& model) {
  const EventIntensities ev = event_intensities(x, pair, model);
  return {ev.p_alpha, ev.p_beta, ev.p_gamma,
          1.0 - ev.p_alpha - ev.p_beta - ev.p_gamma};
}

}  // namespace

McEstimate simulate_events(const McConfig& cfg) {
  if (cfg.trials < 1)
    throw std::invalid_argument("simulate_events: trials must be >= 1");
  const DetectionModel model{cfg.eta, EventSet::ABG,
                             Routing::ClassicalRouting};
  validate_detection_inputs(cfg.pair, model);

  const double pa = psf_a(cfg.x, cfg.pair);
  const double pb = psf_b(cfg.x, cfg.pair);
  const double p_pair = pa * pb;
  const double p_single = pa + pb;
  if (p_pair + p_single > 1.0)
    throw SigmaTooSmallError(
        "simulate_events: emission probabilities exceed 1 at x = " +
        std::to_string(cfg.x) + "; widen sigma");

  std::array<std::int64_t, 4> counts{};
  for (std::int64_t i = 0; i < cfg.trials; ++i) {
    SplitMix64 rng = substream(cfg.seed, static_cast<std::uint64_t>(i));
    bool click_first = false;
    bool click_second = false;
    const auto photon = [&] {
      const bool to_first = rng.uniform() < 0.5;
      const bool absorbed = rng.uniform() < cfg.eta;
      if (absorbed) (to_first ? click_first : click_second) = true;
    };
    const double u = rng.uniform();
    if (u < p_pair) {
      photon();
      photon();
    } else if (u < p_pair + p_single) {
      photon();
    }
    const std::size_t outcome = click_first && click_second ? kMcGamma
                                : click_first              ? kMcAlpha
                                : click_second             ? kMcBeta
                                                           : kMcNone;
    ++counts[outcome];
  }

  McEstimate est;
  est.counts = counts;
  est.trials = cfg.trials;
  for (std::size_t e = 0; e < 4; ++e) {
    est.freq[e] = static_cast<double>(counts[e]) /
                  static_cast<double>(cfg.trials);
    est.ci_halfwidth[e] = binomial_ci_halfwidth(est.freq[e], cfg.trials);
  }
  return est;
}

ValidationReport validate_against_analytic(const McConfig& cfg) {
  ValidationReport report;
  report.estimate = simulate_events(cfg);

  const DetectionModel classical_model{cfg.eta, EventSet::ABG,
                                       Routing::ClassicalRouting};
  const DetectionModel paper_model{cfg.eta, EventSet::ABG,
                                   Routing::PaperModel};
  const auto classical =
      outcome_probabilities(cfg.x, cfg.pair, classical_model);
  const auto paper = outcome_probabilities(cfg.x, cfg.pair, paper_model);

  report.pass = true;
  for (std::size_t e = 0; e < 4; ++e) {
    EventComparison& row = report.rows[e];
    row.event = kMcOutcomeNames[e];
    row.count = report.estimate.counts[e];
    row.freq = report.estimate.freq[e];
    row.ci_halfwidth = report.estimate.ci_halfwidth[e];
    row.classical = classical[e];
    row.paper = paper[e];
    row.paper_delta = paper[e] - classical[e];
    // The analytic half-width covers cells whose observed count is zero.
    const double tolerance =
        std::max(row.ci_halfwidth,
                 binomial_ci_halfwidth(classical[e], cfg.trials));
    row.pass = std::abs(row.freq - classical[e]) <= tolerance;
    report.pass = report.pass && row.pass;
  }
  return report;
}

namespace {

constexpr int kMlBins = 64;
constexpr double kGoldenTol = 1e-5;
constexpr int kGoldenMaxIter = 200;

double golden_section_maximize(const std::function<double(double)>& f,
                               double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int iter = 0;
  while (b - a > kGoldenTol) {
    if (++iter > kGoldenMaxIter)
      throw OptimizerNonConvergenceError(
          "likelihood search bracket failed to shrink below tolerance");
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

MlStudyResult ml_variance_study(double d_true, double eta,
                                std::int64_t samples,
                                std::int64_t trials_per_sample,
                                std::uint64_t seed, double sigma) {
  if (samples < 2)
    throw std::invalid_argument("ml_variance_study: need >= 2 samples");
  if (trials_per_sample < 1)
    throw std::invalid_argument("ml_variance_study: need >= 1 trial");
  const GaussianPsfPair true_pair(sigma, d_true);
  const DetectionModel model{eta, EventSet::ABG, Routing::ClassicalRouting};
  validate_detection_inputs(true_pair, model);

  MlStudyResult out;
  out.samples = samples;
  out.trials_per_sample = trials_per_sample;
  out.grid = linspace(-5.0 * sigma, d_true + 5.0 * sigma, kMlBins);

  // Even split of trials across bins, remainder to the leading bins.
  std::array<std::int64_t, kMlBins> bin_trials{};
  for (int j = 0; j < kMlBins; ++j)
    bin_trials[j] = trials_per_sample / kMlBins +
                    (j < trials_per_sample % kMlBins ? 1 : 0);

  std::array<std::array<double, 4>, kMlBins> true_probs;
  for (int j = 0; j < kMlBins; ++j)
    true_probs[j] = outcome_probabilities(out.grid[j], true_pair, model);

  using Counts = std::array<std::array<std::int64_t, 4>, kMlBins>;
  const auto draw_counts = [&](std::int64_t sample) {
    Counts counts{};
    for (int j = 0; j < kMlBins; ++j) {
      SplitMix64 rng = substream(
          seed, static_cast<std::uint64_t>(sample * kMlBins + j));
      const auto& p = true_probs[j];
      for (std::int64_t t = 0; t < bin_trials[j]; ++t) {
        const double u = rng.uniform();
        std::size_t outcome = kMcNone;
        if (u < p[0])
          outcome = kMcAlpha;
        else if (u < p[0] + p[1])
          outcome = kMcBeta;
        else if (u < p[0] + p[1] + p[2])
          outcome = kMcGamma;
        ++counts[j][outcome];
      }
    }
    return counts;
  };

  const auto log_likelihood = [&](const Counts& counts, double d) {
    const GaussianPsfPair pair(sigma, d);
    double ll = 0.0;
    for (int j = 0; j < kMlBins; ++j) {
      const auto p = outcome_probabilities(out.grid[j], pair, model);
      for (std::size_t e = 0; e < 4; ++e)
        if (counts[j][e] > 0)
          ll += static_cast<double>(counts[j][e]) *
                std::log(std::max(p[e], kProbFloor));
    }
    return ll;
  };

  std::vector<double> estimates;
  estimates.reserve(static_cast<std::size_t>(samples));
  for (std::int64_t s = 0; s < samples; ++s) {
    const Counts counts = draw_counts(s);
    estimates.push_back(golden_section_maximize(
        [&](double d) { return log_likelihood(counts, d); }, 0.0,
        2.0 * d_true));
  }

  double mean = 0.0;
  for (const double v : estimates) mean += v;
  mean /= static_cast<double>(samples);
  double ss = 0.0;
  for (const double v : estimates) ss += (v - mean) * (v - mean);
  out.mean_estimate = mean;
  out.variance = ss / static_cast<double>(samples - 1);

  // Multinomial Fisher information matched to the same design: the none
  // class absorbs the complement, so its derivative is minus the sum.
  double fisher = 0.0;
  for (int j = 0; j < kMlBins; ++j) {
    const EventIntensities ev =
        event_intensities(out.grid[j], true_pair, model);
    const std::array<double, 4> p{
        ev.p_alpha, ev.p_beta, ev.p_gamma,
        1.0 - ev.p_alpha - ev.p_beta - ev.p_gamma};
    const std::array<double, 4> dp{
        ev.dp_alpha_dd, ev.dp_beta_dd, ev.dp_gamma_dd,
        -(ev.dp_alpha_dd + ev.dp_beta_dd + ev.dp_gamma_dd)};
    double per_trial = 0.0;
    for (std::size_t e = 0; e < 4; ++e)
      if (p[e] > kProbFloor) per_trial += dp[e] * dp[e] / p[e];
    fisher += static_cast<double>(bin_trials[j]) * per_trial;
  }
  if (!(fisher > 0.0))
    throw ZeroDenominatorError(
        "ml_variance_study: multinomial Fisher information vanished");
  out.crb_reference = 1.0 / fisher;
  return out;
}

}  // namespace hbtfisher

#include "hbtfisher/crb.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "hbtfisher/errors.hpp"

namespace hbtfisher {
namespace {

CrbPoint infinite_bound(const ExperimentConfig& cfg) {
  CrbPoint p;
  p.d = cfg.pair.d;
  p.eta = cfg.model.eta;
  p.event_set = cfg.model.event_set;
  p.crb = std::numeric_limits<double>::infinity();
  p.fisher = 0.0;
  p.resolvable = false;
  return p;
}

}  // namespace

CrbPoint crb(const ExperimentConfig& cfg) {
  validate_detection_inputs(cfg.pair, cfg.model);
  if (cfg.model.eta == 0.0) return infinite_bound(cfg);

  FisherResult fr;
  try {
    fr = fisher_information(cfg);
  } catch (const DegenerateNormalizationError&) {
    return infinite_bound(cfg);
  }
  if (!(fr.fisher > 0.0)) return infinite_bound(cfg);

  CrbPoint p;
  p.d = cfg.pair.d;
  p.eta = cfg.model.eta;
  p.event_set = cfg.model.event_set;
  p.fisher = fr.fisher;
  p.crb = 1.0 / std::sqrt(fr.fisher);
  p.resolvable = p.crb <= p.d;
  return p;
}

CriticalDistanceResult critical_distance(double eta, EventSet event_set,
                                         double sigma, std::int64_t repeats,
                                         double bracket_lo, double bracket_hi,
                                         double tol, Routing routing) {
  if (!(bracket_lo >= 0.0) || !(bracket_hi > bracket_lo))
    throw std::invalid_argument("critical_distance: bad bracket");
  if (!(tol > 0.0)) throw std::invalid_argument("critical_distance: bad tol");

  const auto g = [&](double d) {
    ExperimentConfig cfg{GaussianPsfPair(sigma, d),
                         DetectionModel{eta, event_set, routing}, repeats};
    return crb(cfg).crb - d;
  };

  // Scan at fixed resolution; record every sign-changing cell so multiple
  // crossings are reported, then bisect inside the first one.
  constexpr double kScanStep = 0.05;
  std::vector<std::pair<double, double>> scan;
  for (double d = bracket_lo; d < bracket_hi + 0.5 * kScanStep;
       d += kScanStep) {
    const double dd = std::min(d, bracket_hi);
    scan.emplace_back(dd, g(dd));
    if (dd >= bracket_hi) break;
  }

  int crossings = 0;
  double lo = 0.0, hi = 0.0, glo = 0.0;
  for (std::size_t i = 0; i + 1 < scan.size(); ++i) {
    const auto& [d0, g0] = scan[i];
    const auto& [d1, g1] = scan[i + 1];
    if (!std::isfinite(g0) || !std::isfinite(g1)) continue;
    if (g0 == 0.0 || g0 * g1 < 0.0) {
      if (crossings == 0) {
        lo = d0;
        hi = d1;
        glo = g0;
      }
      ++crossings;
    }
  }
  if (crossings == 0)
    throw NoSignChangeError(
        "crb(d) - d does not change sign on [" + std::to_string(bracket_lo) +
            ", " + std::to_string(bracket_hi) + "]",
        std::move(scan));

  CriticalDistanceResult out;
  out.sign_changes_detected = crossings;

  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    ++out.iterations;
    if (gm == 0.0) break;
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
    if (hi - lo <= tol * (1.0 + std::abs(mid)) &&
        std::abs(gm) <= tol * (1.0 + std::abs(mid)))
      break;
  }

  out.d_star = mid;
  out.residual = std::abs(g(mid));
  return out;
}

std::vector<CrbPoint> crb_sweep(const ExperimentConfig& base, SweepAxis axis,
                                std::span<const double> grid) {
  if (grid.empty()) throw std::invalid_argument("sweep grid is empty");

  std::vector<CrbPoint> rows;
  rows.reserve(grid.size());
  for (const double value : grid) {
    ExperimentConfig cfg = base;
    if (axis == SweepAxis::Eta) {
      cfg.model.eta = value;
    } else {
      cfg.pair = GaussianPsfPair(base.pair.sigma, value);
    }
    try {
      rows.push_back(crb(cfg));
    } catch (const ModelError& e) {
      throw ModelError(e.name(), "at sweep value " + std::to_string(value) +
                                     ": " + e.what());
    }
  }
  return rows;
}

}  // namespace hbtfisher

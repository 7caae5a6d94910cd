#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hbtfisher/fisher.hpp"

namespace hbtfisher {

/// Cramer-Rao bound at one parameter point. `crb` is +infinity when the
/// Fisher information vanishes (eta = 0); that is a legitimate query and is
/// reported rather than thrown.
struct CrbPoint {
  double d = 0.0;
  double eta = 0.0;
  EventSet event_set = EventSet::ABG;
  double crb = 0.0;        // 1 / sqrt(F_d)
  double fisher = 0.0;
  bool resolvable = false;  // crb <= d
};

CrbPoint crb(const ExperimentConfig& cfg);

struct CriticalDistanceResult {
  double d_star = 0.0;
  int iterations = 0;
  double residual = 0.0;        // |crb(d_star) - d_star|
  int sign_changes_detected = 0;  // from the 0.05-resolution bracket scan
};

/// Solves crb(d) = d by bisection on g(d) = crb(d) - d.
///
/// A scan at resolution 0.05 across [bracket_lo, bracket_hi] locates sign
/// changes first; bisection then runs on the first sign-changing cell.
/// Throws NoSignChangeError (with the scan attached) when g never crosses
/// zero in the bracket.
CriticalDistanceResult critical_distance(double eta, EventSet event_set,
                                         double sigma = 1.0,
                                         std::int64_t repeats = 1,
                                         double bracket_lo = 0.2,
                                         double bracket_hi = 3.0,
                                         double tol = 1e-4,
                                         Routing routing = Routing::PaperModel);

std::vector<CrbPoint> crb_sweep(const ExperimentConfig& base, SweepAxis axis,
                                std::span<const double> grid);

}  // namespace hbtfisher

#pragma once

#include <functional>

namespace hbtfisher {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;  // accepted subintervals
};

/// Adaptive Gauss-Kronrod (7,15) integration of f over [a, b].
///
/// Bisects until the per-interval Kronrod/Gauss discrepancy meets the
/// shared absolute tolerance or max_depth is reached; error estimates of
/// accepted intervals accumulate into error_estimate. Deterministic: the
/// subdivision order is a fixed depth-first recursion.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol = 1e-10,
                           int max_depth = 48);

}  // namespace hbtfisher

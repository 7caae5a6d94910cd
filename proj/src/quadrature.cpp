#include "hbtfisher/quadrature.hpp"

#include <array>
#include <cmath>

namespace hbtfisher {
namespace {

// 15-point Kronrod abscissae on [-1, 1] (positive half) with the embedded
// 7-point Gauss rule on the odd-indexed nodes. Standard QUADPACK constants.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct PanelEstimate {
  double kronrod;
  double error;
};

PanelEstimate gauss_kronrod_panel(const std::function<double(double)>& f,
                                  double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double kronrod = 0.0;
  double gauss = 0.0;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double pair_sum = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * pair_sum;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair_sum;
  }
  const double fc = f(center);
  kronrod += kKronrodWeights[7] * fc;
  gauss += kGaussWeights[3] * fc;

  return {half * kronrod, std::abs(half * (kronrod - gauss))};
}

void integrate_recursive(const std::function<double(double)>& f, double a,
                         double b, double tol, int depth, int max_depth,
                         QuadratureResult& out) {
  const PanelEstimate panel = gauss_kronrod_panel(f, a, b);
  if (panel.error <= tol || depth >= max_depth) {
    out.value += panel.kronrod;
    out.error_estimate += panel.error;
    ++out.intervals;
    return;
  }
  const double mid = 0.5 * (a + b);
  integrate_recursive(f, a, mid, 0.5 * tol, depth + 1, max_depth, out);
  integrate_recursive(f, mid, b, 0.5 * tol, depth + 1, max_depth, out);
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol, int max_depth) {
  QuadratureResult out;
  integrate_recursive(f, a, b, abs_tol, 0, max_depth, out);
  return out;
}

}  // namespace hbtfisher

#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hbtfisher/quadrature.hpp"

using namespace hbtfisher;

TEST_CASE("polynomials integrate exactly") {
  const QuadratureResult r =
      integrate([](double x) { return x * x; }, 0.0, 1.0);
  CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(r.intervals >= 1);
}

TEST_CASE("gaussian over a wide window integrates to one") {
  const double sigma = 0.7;
  const QuadratureResult r = integrate(
      [sigma](double x) {
        return std::exp(-x * x / (2 * sigma * sigma)) /
               (sigma * std::sqrt(2 * std::numbers::pi));
      },
      -10.0 * sigma, 10.0 * sigma);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.error_estimate < 1e-9);
}

TEST_CASE("oscillatory integrand") {
  const QuadratureResult r =
      integrate([](double x) { return std::sin(10.0 * x); }, 0.0,
                std::numbers::pi);
  // exact: (1 - cos(10 pi)) / 10 = 0
  CHECK(r.value == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("narrow spike forces subdivision") {
  const QuadratureResult r = integrate(
      [](double x) { return std::exp(-x * x / (2 * 1e-4)); }, -5.0, 5.0);
  CHECK(r.value == doctest::Approx(std::sqrt(2 * std::numbers::pi * 1e-4))
                       .epsilon(1e-8));
  CHECK(r.intervals > 8);
}

TEST_CASE("reversed and empty intervals") {
  const QuadratureResult fwd =
      integrate([](double x) { return x; }, 0.0, 2.0);
  CHECK(fwd.value == doctest::Approx(2.0).epsilon(1e-14));
  const QuadratureResult nil =
      integrate([](double x) { return x; }, 1.0, 1.0);
  CHECK(nil.value == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("tolerance is honored") {
  const QuadratureResult loose = integrate(
      [](double x) { return std::exp(-x) * std::sin(30 * x); }, 0.0, 8.0,
      1e-4);
  const QuadratureResult tight = integrate(
      [](double x) { return std::exp(-x) * std::sin(30 * x); }, 0.0, 8.0,
      1e-12);
  CHECK(std::abs(loose.value - tight.value) < 1e-4);
  CHECK(tight.intervals >= loose.intervals);
}

#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "hbtfisher/psf.hpp"

using namespace hbtfisher;

TEST_CASE("gaussian psf values") {
  const GaussianPsfPair pair(1.0, 2.0);
  CHECK(psf_a(0.0, pair) == doctest::Approx(0.3989422804014327).epsilon(1e-14));
  CHECK(psf_a(1.0, pair) ==
        doctest::Approx(0.24197072451914337).epsilon(1e-14));
  CHECK(psf_b(0.0, pair) ==
        doctest::Approx(0.05399096651318806).epsilon(1e-14));
  CHECK(psf_b(2.0, pair) == doctest::Approx(psf_a(0.0, pair)).epsilon(1e-14));
}

TEST_CASE("psf_b is psf_a shifted by d") {
  const GaussianPsfPair pair(0.8, 1.7);
  for (double x : {-2.0, 0.0, 0.3, 1.7, 4.0})
    CHECK(psf_b(x, pair) ==
          doctest::Approx(psf_a(x - pair.d, pair)).epsilon(1e-14));
}

TEST_CASE("overlap integral closed form") {
  CHECK(overlap_integral(GaussianPsfPair(1.0, 0.0)) ==
        doctest::Approx(0.28209479177387814).epsilon(1e-14));
  CHECK(overlap_integral(GaussianPsfPair(1.0, 2.0)) ==
        doctest::Approx(0.1037768743551487).epsilon(1e-14));
  // decreasing in d
  double prev = overlap_integral(GaussianPsfPair(1.0, 0.0));
  for (double d : {0.5, 1.0, 2.0, 4.0}) {
    const double cur = overlap_integral(GaussianPsfPair(1.0, d));
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("overlap integral matches a direct product sum") {
  const GaussianPsfPair pair(1.3, 0.9);
  double sum = 0.0;
  const int bins = 20000;
  const double lo = -12.0, hi = 14.0;
  const double w = (hi - lo) / bins;
  for (int i = 0; i < bins; ++i) {
    const double x = lo + (i + 0.5) * w;
    sum += psf_a(x, pair) * psf_b(x, pair) * w;
  }
  CHECK(overlap_integral(pair) == doctest::Approx(sum).epsilon(1e-10));
}

TEST_CASE("psf derivative matches finite differences") {
  const GaussianPsfPair pair(1.1, 1.4);
  const double h = 1e-6;
  for (double x : {-1.0, 0.0, 0.7, 1.4, 2.0, 3.5}) {
    const GaussianPsfPair plus(pair.sigma, pair.d + h);
    const GaussianPsfPair minus(pair.sigma, pair.d - h);
    const double fd = (psf_b(x, plus) - psf_b(x, minus)) / (2.0 * h);
    CHECK(dpsf_b_dd(x, pair) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("overlap derivative matches finite differences") {
  const double h = 1e-6;
  for (double d : {0.4, 1.1, 2.7}) {
    const double fd = (overlap_integral(GaussianPsfPair(1.0, d + h)) -
                       overlap_integral(GaussianPsfPair(1.0, d - h))) /
                      (2.0 * h);
    CHECK(doverlap_integral_dd(GaussianPsfPair(1.0, d)) ==
          doctest::Approx(fd).epsilon(1e-8));
  }
  // flat at zero separation; one-sided difference since d stays nonnegative
  const double fd0 = (overlap_integral(GaussianPsfPair(1.0, h)) -
                      overlap_integral(GaussianPsfPair(1.0, 0.0))) /
                     h;
  CHECK(doverlap_integral_dd(GaussianPsfPair(1.0, 0.0)) ==
        doctest::Approx(fd0).epsilon(1e-5).scale(1.0));
}

TEST_CASE("integration window tracks the pair") {
  const GaussianPsfPair pair(1.5, 2.0);
  CHECK(integration_lo(pair) == doctest::Approx(-15.0));
  CHECK(integration_hi(pair) == doctest::Approx(17.0));
}

TEST_CASE("constructor rejects bad parameters") {
  CHECK_THROWS_AS(GaussianPsfPair(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(GaussianPsfPair(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(GaussianPsfPair(1.0, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(GaussianPsfPair(std::nan(""), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(GaussianPsfPair(1.0, std::nan("")), std::invalid_argument);
  CHECK_NOTHROW(GaussianPsfPair(1.0, 0.0));
}

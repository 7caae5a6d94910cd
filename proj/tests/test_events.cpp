#include "doctest.h"

#include <cmath>
#include <numbers>

#include "hbtfisher/errors.hpp"
#include "hbtfisher/events.hpp"
#include "hbtfisher/psf.hpp"

using namespace hbtfisher;

namespace {

const GaussianPsfPair kOverlapped(1.0, 0.0);
const DetectionModel kPaperIdeal{1.0, EventSet::ABG, Routing::PaperModel};
const DetectionModel kClassicalIdeal{1.0, EventSet::ABG,
                                     Routing::ClassicalRouting};

}  // namespace

TEST_CASE("event intensities at the fully overlapped ideal point") {
  const EventIntensities ev = event_intensities(0.0, kOverlapped, kPaperIdeal);
  CHECK(ev.p_alpha == doctest::Approx(0.4387310161744065).epsilon(1e-14));
  CHECK(ev.p_beta == ev.p_alpha);
  CHECK(ev.p_gamma == doctest::Approx(0.15915494309189535).epsilon(1e-14));

  const EventIntensities cl =
      event_intensities(0.0, kOverlapped, kClassicalIdeal);
  CHECK(cl.p_gamma == doctest::Approx(0.07957747154594767).epsilon(1e-14));
  // at eta = 1 the alpha weights coincide across routings
  CHECK(cl.p_alpha == doctest::Approx(ev.p_alpha).epsilon(1e-14));
}

TEST_CASE("alpha intensity at half efficiency") {
  const DetectionModel model{0.5, EventSet::ABG, Routing::PaperModel};
  const EventIntensities ev = event_intensities(0.0, kOverlapped, model);
  CHECK(ev.p_alpha == doctest::Approx(0.2691014278034206).epsilon(1e-14));
}

TEST_CASE("pair coefficients") {
  // eta(1-eta) + (1-(1-eta)^2)/4 vs eta(1-eta)/2 + (1-(1-eta)^2)/4
  CHECK(alpha_pair_coefficient(1.0, Routing::PaperModel) ==
        doctest::Approx(0.25));
  CHECK(alpha_pair_coefficient(1.0, Routing::ClassicalRouting) ==
        doctest::Approx(0.25));
  CHECK(alpha_pair_coefficient(0.5, Routing::PaperModel) ==
        doctest::Approx(0.25 + 0.25 * (1.0 - 0.25)));
  CHECK(alpha_pair_coefficient(0.5, Routing::ClassicalRouting) ==
        doctest::Approx(0.125 + 0.25 * (1.0 - 0.25)));
  CHECK(gamma_pair_coefficient(1.0, Routing::PaperModel) == doctest::Approx(1.0));
  CHECK(gamma_pair_coefficient(1.0, Routing::ClassicalRouting) ==
        doctest::Approx(0.5));
  CHECK(gamma_pair_coefficient(0.0, Routing::PaperModel) == doctest::Approx(0.0));
}

TEST_CASE("single photon and coincidence intensities") {
  CHECK(single_photon_intensity(0.0, kOverlapped) ==
        doctest::Approx(0.3989422804014327).epsilon(1e-14));
  const GaussianPsfPair split(1.0, 1.0);
  CHECK(single_photon_intensity(0.0, split) ==
        doctest::Approx(0.5 * (psf_a(0.0, split) + psf_b(0.0, split)))
            .epsilon(1e-14));
  CHECK(coincidence_intensity(0.5, split) ==
        doctest::Approx(psf_a(0.5, split) * psf_b(0.5, split)).epsilon(1e-14));
  CHECK(same_path_pair_intensity(0.5, split) ==
        doctest::Approx(0.25 * coincidence_intensity(0.5, split))
            .epsilon(1e-14));
}

TEST_CASE("event fluxes at the fully overlapped ideal point") {
  const EventFlux flux = event_flux(kOverlapped, kPaperIdeal);
  CHECK(flux.alpha == doctest::Approx(1.0705236979434696).epsilon(1e-14));
  CHECK(flux.beta == flux.alpha);
  CHECK(flux.gamma == doctest::Approx(0.28209479177387814).epsilon(1e-14));
}

TEST_CASE("flux matches the integrated intensities") {
  const GaussianPsfPair pair(1.2, 1.5);
  const DetectionModel model{0.7, EventSet::ABG, Routing::PaperModel};
  const EventFlux flux = event_flux(pair, model);

  double alpha_sum = 0.0, gamma_sum = 0.0;
  const int bins = 40000;
  const double lo = -14.0, hi = 16.0;
  const double w = (hi - lo) / bins;
  for (int i = 0; i < bins; ++i) {
    const double x = lo + (i + 0.5) * w;
    const EventIntensities ev = event_intensities(x, pair, model);
    alpha_sum += ev.p_alpha * w;
    gamma_sum += ev.p_gamma * w;
  }
  CHECK(flux.alpha == doctest::Approx(alpha_sum).epsilon(1e-10));
  CHECK(flux.gamma == doctest::Approx(gamma_sum).epsilon(1e-10));
}

TEST_CASE("intensity derivatives match finite differences") {
  const DetectionModel model{0.6, EventSet::ABG, Routing::PaperModel};
  const double h = 1e-6;
  for (double d : {0.3, 1.0, 2.2}) {
    for (double x : {-0.8, 0.0, 0.4, 1.3, 2.9}) {
      const EventIntensities ev =
          event_intensities(x, GaussianPsfPair(1.0, d), model);
      const EventIntensities plus =
          event_intensities(x, GaussianPsfPair(1.0, d + h), model);
      const EventIntensities minus =
          event_intensities(x, GaussianPsfPair(1.0, d - h), model);
      const double fd_alpha = (plus.p_alpha - minus.p_alpha) / (2.0 * h);
      const double fd_gamma = (plus.p_gamma - minus.p_gamma) / (2.0 * h);
      CHECK(ev.dp_alpha_dd ==
            doctest::Approx(fd_alpha).epsilon(1e-7).scale(1e-6));
      CHECK(ev.dp_gamma_dd ==
            doctest::Approx(fd_gamma).epsilon(1e-7).scale(1e-6));
      CHECK(ev.dp_beta_dd == ev.dp_alpha_dd);
    }
  }
}

TEST_CASE("flux derivative matches finite differences") {
  const DetectionModel model{0.8, EventSet::ABG, Routing::PaperModel};
  const double h = 1e-6;
  for (double d : {0.5, 1.3, 2.4}) {
    const EventFlux ddd = event_flux_ddd(GaussianPsfPair(1.0, d), model);
    const EventFlux plus = event_flux(GaussianPsfPair(1.0, d + h), model);
    const EventFlux minus = event_flux(GaussianPsfPair(1.0, d - h), model);
    CHECK(ddd.alpha == doctest::Approx((plus.alpha - minus.alpha) / (2 * h))
                           .epsilon(1e-8));
    CHECK(ddd.gamma == doctest::Approx((plus.gamma - minus.gamma) / (2 * h))
                           .epsilon(1e-8));
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(
      validate_detection_inputs(GaussianPsfPair(0.3, 1.0), kPaperIdeal),
      SigmaTooSmallError);
  CHECK_THROWS_AS(validate_detection_inputs(
                      kOverlapped, DetectionModel{1.5, EventSet::ABG,
                                                  Routing::PaperModel}),
                  EtaOutOfRangeError);
  CHECK_THROWS_AS(validate_detection_inputs(
                      kOverlapped, DetectionModel{-0.1, EventSet::ABG,
                                                  Routing::PaperModel}),
                  EtaOutOfRangeError);
  CHECK_NOTHROW(validate_detection_inputs(kOverlapped, kPaperIdeal));
  CHECK(sigma_floor() ==
        doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)));
}

TEST_CASE("zero efficiency extinguishes every event") {
  const DetectionModel dark{0.0, EventSet::ABG, Routing::PaperModel};
  const EventIntensities ev = event_intensities(0.2, kOverlapped, dark);
  CHECK(ev.p_alpha == 0.0);
  CHECK(ev.p_beta == 0.0);
  CHECK(ev.p_gamma == 0.0);
  const EventFlux flux = event_flux(kOverlapped, dark);
  CHECK(flux.alpha == 0.0);
  CHECK(flux.gamma == 0.0);
}

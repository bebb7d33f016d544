#include <doctest.h>

#include <Eigen/Core>

#include <cmath>

#include "preyspread/speeds.hpp"

using namespace preyspread;

TEST_CASE("speeds of the reference presets") {
  SpeedReport r = speed_report(lotka(1.5, 1.0, 2.0));
  CHECK(r.c_star == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(r.c_star_star == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(r.regime == Regime::SlowPredator);
  CHECK(r.kpp_flag);
  CHECK(r.c_star_label == "spreading speed");

  r = speed_report(lotka(1.0, 1.0, 3.0));
  CHECK(r.c_star_star == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK(r.regime == Regime::FastPredator);

  r = speed_report(holling2(1.0, 2.0, 1.0, 4.0));
  CHECK(r.c_star == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(r.c_star_star == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(r.regime == Regime::SlowPredator);
}

TEST_CASE("equal speeds count as fast predator") {
  const SpeedReport r = speed_report(lotka(1.0, 1.0, 2.0));
  CHECK(r.c_star == 2.0);
  CHECK(r.c_star_star == 2.0);
  CHECK(r.regime == Regime::FastPredator);
  CHECK(classify_regime(2.0, 2.0) == Regime::FastPredator);
  CHECK(classify_regime(2.0, 1.999) == Regime::SlowPredator);
}

TEST_CASE("c star scales with sqrt(d), c star star does not") {
  const SpeedReport base = speed_report(lotka(1.5, 1.0, 2.0, 1.0));
  for (double s : {0.5, 2.0, 3.0}) {
    const SpeedReport r = speed_report(lotka(1.5, 1.0, 2.0, s * s));
    CHECK(r.c_star == doctest::Approx(s * base.c_star).epsilon(1e-14));
    CHECK(r.c_star_star == base.c_star_star);
  }
}

TEST_CASE("non-KPP prey relabels c star") {
  KineticModel m;
  m.name = "allee-ish";
  m.F = [](double u, double v) { return (1.0 - u) * (0.2 + u) - v; };
  m.G = [](double u, double) { return u - 0.5; };
  const SpeedReport r = speed_report(m);
  CHECK_FALSE(r.kpp_flag);
  CHECK(r.c_star_label == "linear speed lower bound");
}

TEST_CASE("speed report needs positive linear growth") {
  KineticModel m = lotka(1.5, 1.0, 2.0);
  m.G = [](double u, double) { return u - 2.0; };
  CHECK_THROWS_AS(speed_report(m), Error);
}

TEST_CASE("predator super-solution") {
  const KineticModel m = lotka(1.5, 1.0, 2.0);
  CHECK(supersolution_v_bound(m, 1.0, 0.0, 0.0) == 1.0);
  CHECK(supersolution_v_bound(m, 1.0, std::sqrt(2.0), 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(supersolution_v_bound(m, 1.0, 2.0, 0.0) == doctest::Approx(0.2431167344342142).epsilon(1e-14));

  const Eigen::ArrayXd x = Eigen::ArrayXd::LinSpaced(5, 0.0, 4.0);
  const Eigen::ArrayXd b = supersolution_v_bound(m, 2.0, x, 3.0);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    CHECK(b(i) == doctest::Approx(supersolution_v_bound(m, 2.0, x(i), 3.0)).epsilon(1e-15));
  }
}

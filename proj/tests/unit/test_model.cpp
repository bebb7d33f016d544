#include <doctest.h>

#include <cmath>
#include <limits>

#include "preyspread/error.hpp"
#include "preyspread/model.hpp"

using namespace preyspread;

namespace {

KineticModel generic(RateFn F, RateFn G) {
  KineticModel m;
  m.name = "synthetic";
  m.F = std::move(F);
  m.G = std::move(G);
  return m;
}

}  // namespace

TEST_CASE("lotka kinetics at the corners") {
  const KineticModel m = lotka(1.5, 1.0, 2.0);
  Rates r = eval_kinetics(m, 0.0, 0.0);
  CHECK(r.F == 1.0);
  CHECK(r.G == -1.5);
  r = eval_kinetics(m, 1.0, 0.0);
  CHECK(r.F == 0.0);
  CHECK(r.G == 0.5);
}

TEST_CASE("holling2 kinetics at (1, 0)") {
  const KineticModel m = holling2(1.0, 2.0, 1.0, 4.0);
  const Rates r = eval_kinetics(m, 1.0, 0.0);
  CHECK(r.F == doctest::Approx(0.0).epsilon(1e-15));
  // mu m u / (b + u) - a = 4/3 - 1
  CHECK(r.G == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("eval_kinetics rejects negative densities and non-finite output") {
  const KineticModel m = lotka(1.5, 1.0, 2.0);
  CHECK_THROWS_AS(eval_kinetics(m, -0.1, 0.0), Error);
  const KineticModel bad = generic([](double, double) { return std::numeric_limits<double>::quiet_NaN(); },
                                   [](double, double) { return 0.0; });
  try {
    eval_kinetics(bad, 0.5, 0.5);
    FAIL("expected ModelDefinition");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ModelDefinition);
  }
}

TEST_CASE("presets pass every clause at several resolutions") {
  for (const KineticModel& m : {lotka(1.5, 1.0, 2.0), lotka(1.0, 1.0, 3.0), holling2(1.0, 2.0, 1.0, 4.0)}) {
    for (int n : {8, 17, 33, 65}) {
      const AssumptionReport report = check_assumptions(m, {n, 4.0, n});
      CAPTURE(m.name);
      CAPTURE(n);
      CHECK(report.all_pass());
    }
  }
}

TEST_CASE("grid coarser than 8x8 is rejected") {
  CHECK_THROWS_AS(check_assumptions(lotka(1.5, 1.0, 2.0), {4, 4.0, 4}), Error);
}

TEST_CASE("prey increasing in predator is refuted with a witness") {
  const KineticModel m = generic([](double u, double v) { return 1.0 - u + v; },
                                 [](double u, double) { return u - 0.5; });
  const AssumptionReport report = check_assumptions(m);
  const ClauseResult& c = report[Clause::PreyDecreasingInPredator];
  REQUIRE(c.status == ClauseStatus::Fail);
  REQUIRE_FALSE(c.witnesses.empty());
  for (const Witness& w : c.witnesses) {
    CHECK(w.u1 == w.u2);
    CHECK(w.v1 < w.v2);
    CHECK(w.value1 <= w.value2);
  }
  // The witness (u, v1, v2) = (0.5, 0, 1) from the definition.
  CHECK(m.F(0.5, 0.0) < m.F(0.5, 1.0));
}

TEST_CASE("holling2 with G(1,0) < 0 fails the predator sign clause") {
  const KineticModel m = holling2(1.0, 2.0, 1.0, 2.0);
  CHECK(m.G(1.0, 0.0) == doctest::Approx(-1.0 / 3.0));
  const AssumptionReport report = check_assumptions(m);
  CHECK(report[Clause::PredatorSignChange].status == ClauseStatus::Fail);
  CHECK(report.any_fail());
}

TEST_CASE("m star of simple limits") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(compute_m_star([inf](double) { return -inf; }) == 0.0);
  CHECK(compute_m_star([](double u) { return 0.3 - u; }) == doctest::Approx(0.3).epsilon(1e-8));
  CHECK(compute_m_star([](double u) { return -u * u; }) == doctest::Approx(0.0).epsilon(1e-8));
  CHECK_THROWS_AS(compute_m_star([](double) { return 1.0; }), Error);
}

TEST_CASE("m star is monotone along an affine family") {
  double prev = -1.0;
  for (double s = 0.05; s < 0.95; s += 0.1) {
    const double m = compute_m_star([s](double u) { return s - u; }, 1e-9);
    CHECK(m == doctest::Approx(s).epsilon(1e-8));
    CHECK(m >= prev - 1e-9);
    prev = m;
  }
}

TEST_CASE("weak dissipativity of the presets") {
  const DissipativityReport l = check_weak_dissipativity(lotka(1.5, 1.0, 2.0));
  CHECK(l.verdict == Verdict::Satisfied);
  CHECK(l.m_star == 0.0);
  CHECK(l.G_at_zero_inf == doctest::Approx(-1.5));

  const DissipativityReport h = check_weak_dissipativity(holling2(1.0, 2.0, 1.0, 4.0));
  CHECK(h.verdict == Verdict::Satisfied);
  CHECK(h.m_star == 0.0);
  CHECK(h.G_at_zero_inf == doctest::Approx(-1.0));

  const DissipativityReport f = check_weak_dissipativity(lotka(1.0, 1.0, 3.0));
  CHECK(f.verdict == Verdict::Satisfied);
}

TEST_CASE("dissipativity violated when the predator grows at m star") {
  KineticModel m = generic([](double u, double v) { return (1.0 - u) - v * (u - 0.5); },
                           [](double u, double) { return u - 0.3; });
  m.F_inf = [](double u) { return 0.5 - u; };
  m.G_inf = [](double u) { return u - 0.3; };
  const DissipativityReport r = check_weak_dissipativity(m);
  CHECK(r.m_star == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(r.G_at_mstar_inf == doctest::Approx(0.2).epsilon(1e-7));
  CHECK(r.verdict == Verdict::Violated);
}

TEST_CASE("dissipativity without closed-form limits is indeterminate") {
  const KineticModel m = generic([](double u, double v) { return 1.0 - u - v; },
                                 [](double u, double) { return u - 0.5; });
  CHECK(check_weak_dissipativity(m).verdict == Verdict::Indeterminate);
}

TEST_CASE("equilibria of the presets") {
  Equilibrium e = equilibrium(lotka(1.5, 1.0, 2.0));
  CHECK(e.u == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(e.v == doctest::Approx(0.25).epsilon(1e-12));
  e = equilibrium(lotka(1.0, 1.0, 3.0));
  CHECK(e.u == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(e.v == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  e = equilibrium(holling2(1.0, 2.0, 1.0, 4.0));
  CHECK(e.u == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(e.v == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("lotka equilibrium matches the closed form over a parameter family") {
  for (double a : {0.5, 1.0, 1.5}) {
    for (double mu : {2.0, 3.0, 5.0}) {
      const double b = 1.0;
      const KineticModel m = lotka(a, b, mu);
      const Equilibrium e = equilibrium(m);
      CHECK(e.u == doctest::Approx(a / (mu * b)).epsilon(1e-12));
      CHECK(e.v == doctest::Approx((mu * b - a) / (mu * b * b)).epsilon(1e-12));
      const Rates r = eval_kinetics(m, e.u, e.v);
      CHECK(std::abs(r.F) + std::abs(r.G) <= 1e-12);
    }
  }
}

TEST_CASE("generic equilibrium via Newton") {
  // Same kinetics as lotka(1.5, 1, 2) but without the closed form.
  const KineticModel m = generic([](double u, double v) { return 1.0 - u - v; },
                                 [](double u, double) { return 2.0 * u - 1.5; });
  const Equilibrium e = equilibrium(m);
  CHECK(e.u == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(e.v == doctest::Approx(0.25).epsilon(1e-10));
  const Rates r = eval_kinetics(m, e.u, e.v);
  CHECK(std::abs(r.F) + std::abs(r.G) <= 1e-12);
}

TEST_CASE("no interior equilibrium when the predator cannot persist") {
  // mu b < a: v* would be negative.
  try {
    equilibrium(lotka(3.0, 1.0, 2.0));
    FAIL("expected NoInteriorEquilibrium");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoInteriorEquilibrium);
  }
}

TEST_CASE("parameter parsing and presets") {
  const ParamMap p = parse_params("a=1.5,b=1,mu=2,d=1");
  CHECK(p.at("a") == 1.5);
  CHECK(p.at("mu") == 2.0);
  CHECK(parse_params("").empty());
  CHECK_THROWS_AS(parse_params("a=x"), Error);
  CHECK_THROWS_AS(parse_params("a"), Error);

  const KineticModel m = make_preset("lotka", p);
  CHECK(m.kind == ModelKind::Lotka);
  CHECK(m.param("a") == 1.5);
  CHECK_THROWS_AS(make_preset("lotka", {{"zeta", 1.0}}), Error);
  CHECK_THROWS_AS(make_preset("nope", {}), Error);
  CHECK(make_preset("holling2", {}).param("m") == 1.0);
}

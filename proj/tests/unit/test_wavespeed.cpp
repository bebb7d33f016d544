#include <doctest.h>

#include <cmath>

#include "preyspread/error.hpp"
#include "preyspread/wavespeed.hpp"

using namespace preyspread;

namespace {

const GrowthFn fisher = [](double q) { return 1.0 - q; };

}  // namespace

TEST_CASE("shooting below, above and at zero speed") {
  const ShootOutcome slow = shoot_profile(fisher, 1.0, 1.0, 0.99, 200.0, 5e-3);
  CHECK(slow.kind == ShootKind::HitsZero);
  REQUIRE(slow.b);
  CHECK(std::isfinite(*slow.b));
  CHECK(*slow.b > 0.0);

  const ShootOutcome fast = shoot_profile(fisher, 1.0, 2.5, 0.99, 200.0, 5e-3);
  CHECK(fast.kind == ShootKind::WaveLike);
  CHECK_FALSE(fast.b);

  const ShootOutcome still = shoot_profile(fisher, 1.0, 0.0, 0.5, 200.0, 5e-3);
  CHECK(still.kind == ShootKind::HitsZero);
}

TEST_CASE("HitsZero profiles decrease up to the crossing") {
  ShootSettings s;
  s.profile_stride = 1;
  const ShootOutcome o = shoot_profile(fisher, 1.0, 1.0, 0.99, 200.0, 5e-3, s);
  REQUIRE(o.kind == ShootKind::HitsZero);
  for (std::size_t i = 1; i + 1 < o.profile.size(); ++i) {
    CHECK(o.profile[i].dq < 0.0);
    CHECK(o.profile[i].q > 0.0);
  }
  CHECK(o.profile.back().q <= 0.0);
  CHECK(*o.b <= o.profile.back().z);
  CHECK(*o.b >= o.profile[o.profile.size() - 2].z);
}

TEST_CASE("WaveLike profiles stay in (0, alpha]") {
  ShootSettings s;
  s.profile_stride = 1;
  const ShootOutcome o = shoot_profile(fisher, 1.0, 2.5, 0.99, 200.0, 5e-3, s);
  REQUIRE(o.kind == ShootKind::WaveLike);
  for (const auto& p : o.profile) {
    CHECK(p.q > 0.0);
    CHECK(p.q <= 0.99);
  }
  const auto& last = o.profile.back();
  CHECK(std::abs(last.q) + std::abs(last.dq) < 1e-6);
}

TEST_CASE("classification is stable when halving dz") {
  for (double c : {0.5, 1.0, 1.5, 2.2, 2.5, 3.0}) {
    const auto a = shoot_profile(fisher, 1.0, c, 0.99, 200.0, 1e-2).kind;
    const auto b = shoot_profile(fisher, 1.0, c, 0.99, 200.0, 5e-3).kind;
    CAPTURE(c);
    CHECK(a == b);
  }
}

TEST_CASE("shooting argument checks") {
  CHECK_THROWS_AS(shoot_profile(fisher, 1.0, 1.0, 0.99, 200.0, 0.05), Error);
  CHECK_THROWS_AS(shoot_profile(fisher, 1.0, 1.0, 1.5, 200.0, 5e-3), Error);
  CHECK_THROWS_AS(shoot_profile(fisher, -1.0, 1.0, 0.5, 200.0, 5e-3), Error);
  try {
    shoot_profile(fisher, 1.0, 2.5, 0.99, 5.0, 5e-3);
    FAIL("expected Inconclusive");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Inconclusive);
  }
}

TEST_CASE("minimal speed of KPP growth is 2 sqrt(d f(0))") {
  for (double d : {0.25, 1.0, 4.0}) {
    const double c = minimal_wave_speed(fisher, d, 1e-4);
    CAPTURE(d);
    CHECK(std::abs(c - 2.0 * std::sqrt(d)) <= 0.01 * 2.0 * std::sqrt(d));
  }
  CHECK(minimal_wave_speed(fisher, 1.0, 1e-3) == doctest::Approx(2.0).epsilon(2e-3));
  CHECK(minimal_wave_speed(fisher, 4.0, 1e-3) == doctest::Approx(4.0).epsilon(2e-3));
}

TEST_CASE("pushed front speed above the linear bound") {
  const double a = 0.2;
  const GrowthFn f = [a](double q) { return (1.0 - q) * (q + a); };
  const double c = minimal_wave_speed(f, 1.0, 1e-4);
  CHECK(c >= 2.0 * std::sqrt(a));
  CHECK(c <= 2.0 * std::sqrt((1.0 + a) * (1.0 + a) / 4.0));
  // Exact logistic-profile speed for this cubic.
  CHECK(c == doctest::Approx(std::sqrt(2.0) * (0.5 + a)).epsilon(1e-3));
}

TEST_CASE("feasibility is monotone in c on sampled pairs") {
  bool seen_feasible = false;
  for (double c = 0.0; c <= 3.0; c += 0.125) {
    const ShootKind k = shoot_profile(fisher, 1.0, c, 0.999, 200.0, 5e-3).kind;
    if (seen_feasible) CHECK(k == ShootKind::WaveLike);
    seen_feasible |= k == ShootKind::WaveLike;
  }
  CHECK(seen_feasible);
}

TEST_CASE("growth presets") {
  CHECK(growth_preset("fisher")(0.25) == 0.75);
  CHECK(growth_preset("kpp:2")(0.5) == 1.0);
  CHECK(growth_preset("pushed:0.2")(0.0) == doctest::Approx(0.2));
  CHECK_THROWS_AS(growth_preset("kpp"), Error);
  CHECK_THROWS_AS(growth_preset("kpp:x"), Error);
  CHECK_THROWS_AS(growth_preset("allee"), Error);
}

TEST_CASE("reduced prey zero p_eps") {
  const KineticModel l = lotka(1.5, 1.0, 2.0);
  for (double eps : {0.0, 0.05, 0.2, 0.4}) CHECK(p_epsilon(l, eps) == doctest::Approx(1.0 - eps).epsilon(1e-12));
  CHECK(p_epsilon(holling2(1.0, 2.0, 1.0, 4.0), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  // root of (1-u)(2+u) = 0.2
  const double oracle = (-1.0 + std::sqrt(1.0 + 4.0 * 1.8)) / 2.0;
  CHECK(oracle == doctest::Approx(0.9317821063276353).epsilon(1e-14));
  CHECK(p_epsilon(holling2(1.0, 2.0, 1.0, 4.0), 0.2) == doctest::Approx(oracle).epsilon(1e-12));
  CHECK_THROWS_AS(p_epsilon(l, 1.5), Error);
}

TEST_CASE("epsilon curve of the lotka prey") {
  const KineticModel l = lotka(1.5, 1.0, 2.0);
  const EpsilonCurve single = c_epsilon_curve(l, {0.19}, 1e-4);
  REQUIRE(single.size() == 1);
  CHECK(std::abs(single[0].c - 1.8) <= 0.01 * 1.8);

  const EpsilonCurve zero = c_epsilon_curve(l, {0.0}, 1e-4);
  CHECK(zero[0].p == doctest::Approx(1.0));
  CHECK(std::abs(zero[0].c - 2.0) <= 0.02);

  const EpsilonCurve curve = c_epsilon_curve(l, {0.3, 0.05, 0.15}, 1e-4);
  REQUIRE(curve.size() == 3);
  CHECK(curve[0].eps < curve[1].eps);
  CHECK(is_monotone(curve, 2.0, 1e-4));
}

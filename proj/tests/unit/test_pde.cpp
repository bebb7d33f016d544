#include <doctest.h>

#include <cmath>
#include <limits>

#include "preyspread/config.hpp"
#include "preyspread/error.hpp"
#include "preyspread/fronttrack.hpp"
#include "preyspread/pde.hpp"
#include "preyspread/speeds.hpp"

using namespace preyspread;

namespace {

SimConfig slow_config(double L, double dx, double T) {
  SimConfig c;
  c.model_name = "lotka";
  c.params = {{"a", 1.5}, {"b", 1.0}, {"mu", 2.0}, {"d", 1.0}};
  c.domain = Domain::line(L, dx);
  c.init.u_amp = 1.0;
  c.init.v_amp = 0.5;
  c.time.T = T;
  return c;
}

SimState constant_state(const Domain& d, double u, double v) {
  SimState s;
  s.u = FieldXd::Constant(d.n_points(), u);
  s.v = FieldXd::Constant(d.n_points(), v);
  return s;
}

}  // namespace

TEST_CASE("stationary states are fixed points of a step") {
  const Domain d = Domain::line(10.0, 0.25);
  const KineticModel m = lotka(1.5, 1.0, 2.0);
  const double dt = max_stable_dt(d, 1.0, 0.4);
  for (auto [u, v] : {std::pair{1.0, 0.0}, std::pair{0.0, 0.0}, std::pair{0.75, 0.25}}) {
    SimState s = constant_state(d, u, v);
    for (int k = 0; k < 20; ++k) s = step(std::move(s), m, d, dt);
    CHECK((s.u - u).abs().maxCoeff() <= 1e-15);
    CHECK((s.v - v).abs().maxCoeff() <= 1e-15);
    CHECK(s.clamp.l1_total == 0.0);
  }
  const Domain r = Domain::radial(2, 10.0, 0.25);
  SimState s = constant_state(r, 0.75, 0.25);
  s = step(std::move(s), m, r, max_stable_dt(r, 1.0, 0.4));
  CHECK((s.u - 0.75).abs().maxCoeff() <= 1e-15);
}

TEST_CASE("step rejects an unstable dt") {
  const Domain d = Domain::line(10.0, 0.25);
  const KineticModel m = lotka(1.5, 1.0, 2.0);
  try {
    step(constant_state(d, 1.0, 0.0), m, d, 1.01 * max_stable_dt(d, 1.0, 0.9));
    FAIL("expected CflViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CflViolation);
  }
  SimConfig c = slow_config(40.0, 0.25, 1.0);
  c.time.dt_safety = 0.95;
  try {
    validate(c);
    FAIL("expected CflViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CflViolation);
  }
}

TEST_CASE("stable dt bound") {
  CHECK(max_stable_dt(Domain::line(10.0, 0.25), 1.0, 0.4) == doctest::Approx(0.4 * 0.0625 / 2.0));
  CHECK(max_stable_dt(Domain::radial(3, 10.0, 0.25), 2.0, 0.4) == doctest::Approx(0.4 * 0.0625 / 12.0));
}

TEST_CASE("non-finite fields are reported") {
  const Domain d = Domain::line(5.0, 0.25);
  KineticModel m = lotka(1.5, 1.0, 2.0);
  m.F = [](double, double) { return std::numeric_limits<double>::infinity(); };
  try {
    step(constant_state(d, 0.5, 0.5), m, d, max_stable_dt(d, 1.0, 0.4));
    FAIL("expected NonFinite");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonFinite);
  }
}

TEST_CASE("initial data") {
  SimConfig c = slow_config(40.0, 0.25, 1.0);
  c.init.ramp_width = 0.0;
  SimState s = init_state(c);
  const FieldXd r = c.domain.radius();
  for (Eigen::Index i = 0; i < r.size(); ++i) CHECK(s.u(i) == (r(i) <= 5.0 ? 1.0 : 0.0));

  c.init.u_amp = 0.0;
  c.init.v_amp = 1e-3;
  c.init.v_radius = 1.0;
  c.init.ramp_width.reset();
  s = init_state(c);
  CHECK(s.u.abs().maxCoeff() == 0.0);
  CHECK(s.v.maxCoeff() == doctest::Approx(1e-3));
  const double support = (s.v > 0.0).select(r, 0.0).maxCoeff();
  CHECK(support <= 1.0 + 2.0 * c.domain.dx());

  // The cosine ramp is continuous and monotone in |x|.
  const FieldXd ramp_values = ramp(c.domain, 2.0, 1.0);
  for (Eigen::Index i = c.domain.n_points() / 2; i + 1 < c.domain.n_points(); ++i) {
    CHECK(ramp_values(i + 1) <= ramp_values(i));
  }
}

TEST_CASE("config validation") {
  SimConfig c = slow_config(40.0, 0.25, 1.0);
  c.init.u_radius = 10.0;  // >= L/4
  CHECK_THROWS_AS(validate(c), Error);
  c = slow_config(40.0, 0.25, 1.0);
  c.time.snapshots = {2.0};
  CHECK_THROWS_AS(validate(c), Error);
  c = slow_config(40.0, 0.25, 1.0);
  c.init.u_amp = 1.5;
  CHECK_THROWS_AS(validate(c), Error);
}

TEST_CASE("predator alone decays at least like exp(G(0,0) t)") {
  SimConfig c = slow_config(50.0, 0.25, 10.0);
  c.init.u_amp = 0.0;
  c.init.v_amp = 1.0;
  c.time.snapshots = {1.0, 2.0, 5.0, 10.0};
  const SimOutput out = run_simulation(c);
  REQUIRE(out.snapshots.size() == 4);
  for (const auto& s : out.snapshots) {
    CHECK(s.v.maxCoeff() <= std::exp(-1.5 * s.t) * (1.0 + 1e-9));
    CHECK(s.u.abs().maxCoeff() == 0.0);
  }
}

TEST_CASE("snapshots, fronts and bookkeeping") {
  SimConfig c = slow_config(100.0, 0.25, 20.0);
  c.time.snapshots = {0.0, 5.0, 10.0};
  const SimOutput out = run_simulation(c);
  REQUIRE(out.snapshots.size() == 4);
  CHECK(out.snapshots[0].t == 0.0);
  CHECK(out.snapshots[1].t == doctest::Approx(5.0));
  CHECK(out.snapshots[3].t == doctest::Approx(20.0));
  CHECK(out.final_state.t == doctest::Approx(20.0));
  CHECK_FALSE(out.aborted);
  CHECK(out.trace(Species::Prey, 0.1));
  CHECK(out.trace(Species::Prey, 1e-3));
  CHECK(out.trace(Species::Predator, default_predator_threshold(lotka(1.5, 1.0, 2.0))));
  CHECK(default_predator_threshold(lotka(1.5, 1.0, 2.0)) == doctest::Approx(0.025));

  const FrontTrace& tr = *out.trace(Species::Prey, 0.1);
  CHECK(tr.samples.front().t == 0.0);
  CHECK(tr.samples.back().t == doctest::Approx(20.0));
  for (std::size_t i = 1; i < tr.samples.size(); ++i) {
    CHECK(tr.samples[i].t - tr.samples[i - 1].t <= 50.0 * out.dt_max * (1.0 + 1e-9));
  }

  const ClampStats& cl = out.final_state.clamp;
  CHECK(cl.min_u >= -1e-9);
  CHECK(cl.max_u <= 1.0 + 1e-9);
  CHECK(cl.min_v >= -1e-9);
  CHECK(cl.l1_total <= 1e-6);
}

TEST_CASE("boundary guard stops the run") {
  const SimOutput out = run_simulation(slow_config(30.0, 0.25, 40.0));
  REQUIRE(out.aborted);
  CHECK(out.aborted->species == Species::Prey);
  CHECK(out.aborted->position >= 30.0 - (10.0 * 0.25 + 5.0));
  CHECK(out.final_state.t < 40.0);
  CHECK(out.final_state.t == doctest::Approx(out.aborted->t));
}

TEST_CASE("models failing the standing checks need an override") {
  SimConfig c = slow_config(40.0, 0.25, 1.0);
  c.model_name = "holling2";
  c.params = {{"a", 1.0}, {"b", 2.0}, {"m", 1.0}, {"mu", 2.0}, {"d", 1.0}};
  CHECK_THROWS_AS(run_simulation(c), Error);
  c.allow_unverified_model = true;
  CHECK_NOTHROW(run_simulation(c));
}

TEST_CASE("halving dx barely changes the prey field") {
  const SimOutput coarse = run_simulation(slow_config(150.0, 0.25, 50.0));
  const SimOutput fine = run_simulation(slow_config(150.0, 0.125, 50.0));
  const FieldXd& uc = coarse.final_state.u;
  const FieldXd& uf = fine.final_state.u;
  const FieldXd r = coarse.config.domain.radius();
  // Behind the front the fields agree closely; at the front the steep profile is only displaced.
  double diff = 0.0;
  for (Eigen::Index i = 0; i < uc.size(); ++i) {
    if (r(i) <= 40.0) diff = std::max(diff, std::abs(uc(i) - uf(2 * i)));
  }
  CHECK(diff < 1e-2);
  const auto xc = coarse.trace(Species::Prey, 0.1)->samples.back().x;
  const auto xf = fine.trace(Species::Prey, 0.1)->samples.back().x;
  REQUIRE(xc);
  REQUIRE(xf);
  CHECK(std::abs(*xc - *xf) < 2.0 * 0.25);
}

TEST_CASE("predator stays under the exponential super-solution") {
  SimConfig c = slow_config(150.0, 0.25, 40.0);
  c.time.snapshots = {10.0, 20.0, 30.0};
  const KineticModel m = build_model(c);
  const SimState s0 = init_state(c);
  const FieldXd r = c.domain.radius();
  const double A = (s0.v / supersolution_v_bound(m, 1.0, r, 0.0)).maxCoeff();
  const SimOutput out = run_simulation(c);
  for (const auto& s : out.snapshots) {
    const FieldXd bound = supersolution_v_bound(m, A, r, s.t);
    CHECK((s.v - 1.01 * bound).maxCoeff() <= 0.0);
  }
}

TEST_CASE("runs are deterministic") {
  const SimOutput a = run_simulation(slow_config(60.0, 0.25, 10.0));
  const SimOutput b = run_simulation(slow_config(60.0, 0.25, 10.0));
  CHECK((a.final_state.u - b.final_state.u).abs().maxCoeff() == 0.0);
  CHECK((a.final_state.v - b.final_state.v).abs().maxCoeff() == 0.0);
}

TEST_CASE("radial runs spread outward") {
  SimConfig c = slow_config(80.0, 0.25, 20.0);
  c.domain = Domain::radial(2, 80.0, 0.25);
  const SimOutput out = run_simulation(c);
  CHECK_FALSE(out.aborted);
  const FrontTrace& tr = *out.trace(Species::Prey, 0.1);
  REQUIRE(tr.samples.back().x);
  CHECK(*tr.samples.back().x > 20.0);
  CHECK(*tr.samples.back().x < 2.0 * 20.0 + 5.0);
}

TEST_CASE("config json round trip") {
  const nlohmann::json j = nlohmann::json::parse(R"({
    "model": {"name": "lotka", "params": {"a": 1.5, "b": 1, "mu": 2}, "d": 1},
    "domain": {"geometry": "radial", "N": 3, "length": 40, "dx": 0.5},
    "init": {"u_amp": 1, "v_amp": 0.5, "u_radius": 5, "v_radius": 4, "ramp_width": 1},
    "time": {"T": 10, "snapshots": [5]},
    "fronts": {"thresholds_u": [0.5]},
    "analysis": {"c_grid": [0.5, 1.0]},
    "output": {"dir": "out"}})");
  const SimConfig c = parse_sim_config(j);
  CHECK(c.domain.geometry() == Geometry::Radial);
  CHECK(c.domain.dimension() == 3);
  CHECK(c.params.at("d") == 1.0);
  CHECK(c.init.v_radius == 4.0);
  CHECK(*c.init.ramp_width == 1.0);
  CHECK(c.fronts.thresholds_u == std::vector<double>{0.5});
  CHECK(c.c_grid.size() == 2);
  CHECK(c.output_dir == "out");
  const SimConfig back = parse_sim_config(to_json(c));
  CHECK(to_json(back) == to_json(c));

  nlohmann::json bad = j;
  bad["domain"]["geometry"] = "sphere";
  CHECK_THROWS_AS(parse_sim_config(bad), Error);
  bad = j;
  bad.erase("time");
  CHECK_THROWS_AS(parse_sim_config(bad), Error);
  CHECK_THROWS_AS(load_sim_config("/nonexistent/config.json"), Error);
}

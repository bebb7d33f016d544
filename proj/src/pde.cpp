#include "preyspread/pde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "preyspread/error.hpp"

namespace preyspread {

KineticModel build_model(const SimConfig& config) { return make_preset(config.model_name, config.params); }

void validate(const SimConfig& config) {
  const auto& in = config.init;
  const double L = config.domain.length();
  auto fail = [](const std::string& what) { throw Error(ErrorCode::Config, what); };

  if (!(in.u_amp >= 0.0 && in.u_amp <= 1.0)) fail("init.u_amp must lie in [0, 1]");
  if (!(in.v_amp >= 0.0) || !std::isfinite(in.v_amp)) fail("init.v_amp must be finite and >= 0");
  if (!(in.u_radius >= 0.0 && in.u_radius < L / 4)) fail("init.u_radius must lie in [0, L/4)");
  if (!(in.v_radius >= 0.0 && in.v_radius < L / 4)) fail("init.v_radius must lie in [0, L/4)");
  if (in.ramp_width && !(*in.ramp_width >= 0.0)) fail("init.ramp_width must be >= 0");
  if (!(config.time.T > 0.0) || !std::isfinite(config.time.T)) fail("time.T must be positive");
  if (!(config.time.dt_safety > 0.0)) fail("time.dt_safety must be positive");
  if (config.time.dt_safety > kMaxDtSafety) {
    throw Error(ErrorCode::CflViolation, "time.dt_safety must not exceed 0.9");
  }
  for (double s : config.time.snapshots) {
    if (!(s >= 0.0 && s <= config.time.T)) fail("snapshot times must lie in [0, T]");
  }
  for (const auto* list : {&config.fronts.thresholds_u, &config.fronts.thresholds_v}) {
    for (double th : *list) {
      if (!(th > 0.0)) fail("front thresholds must be positive");
    }
  }
  build_model(config);
}

FieldXd ramp(const Domain& domain, double radius, double width) {
  const FieldXd r = domain.radius();
  FieldXd out(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    if (r(i) <= radius) {
      out(i) = 1.0;
    } else if (width <= 0.0 || r(i) >= radius + width) {
      out(i) = 0.0;
    } else {
      out(i) = 0.5 * (1.0 + std::cos(std::numbers::pi * (r(i) - radius) / width));
    }
  }
  return out;
}

SimState init_state(const SimConfig& config) {
  validate(config);
  const Domain& domain = config.domain;
  const double width = config.init.ramp_width.value_or(2.0 * domain.dx());
  SimState s;
  s.u = config.init.u_amp * ramp(domain, config.init.u_radius, width);
  s.v = config.init.v_amp * ramp(domain, config.init.v_radius, width);
  s.v_sup_running = s.v.maxCoeff();
  return s;
}

double max_stable_dt(const Domain& domain, double d, double dt_safety) {
  return dt_safety * domain.dx() * domain.dx() / (2.0 * domain.effective_dimension() * std::max(d, 1.0));
}

namespace {

void reaction(const KineticModel& model, const FieldXd& u, const FieldXd& v, FieldXd& ru, FieldXd& rv) {
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double uu = std::max(u(i), 0.0);
    const double vv = std::max(v(i), 0.0);
    ru(i) = u(i) * model.F(uu, vv);
    rv(i) = v(i) * model.G(uu, vv);
  }
}

}  // namespace

SimState step(SimState state, const KineticModel& model, const Domain& domain, double dt) {
  const double bound = max_stable_dt(domain, model.d, kMaxDtSafety);
  if (!(dt > 0.0) || dt > bound * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "dt = " << dt << " exceeds the explicit bound " << bound;
    throw Error(ErrorCode::CflViolation, os.str());
  }
  const Eigen::Index n = domain.n_points();
  if (state.u.size() != n || state.v.size() != n) throw Error(ErrorCode::Domain, "state does not match domain");

  FieldXd ru(n), rv(n);
  reaction(model, state.u, state.v, ru, rv);
  const FieldXd k1u = model.d * laplacian(state.u, domain) + ru;
  const FieldXd k1v = laplacian(state.v, domain) + rv;

  const FieldXd u1 = state.u + dt * k1u;
  const FieldXd v1 = state.v + dt * k1v;
  reaction(model, u1, v1, ru, rv);
  const FieldXd k2u = model.d * laplacian(u1, domain) + ru;
  const FieldXd k2v = laplacian(v1, domain) + rv;

  FieldXd u = state.u + 0.5 * dt * (k1u + k2u);
  FieldXd v = state.v + 0.5 * dt * (k1v + k2v);
  if (!u.allFinite() || !v.allFinite()) {
    std::ostringstream os;
    os << "non-finite field after step at t = " << state.t + dt;
    throw Error(ErrorCode::NonFinite, os.str());
  }

  ClampStats& c = state.clamp;
  c.min_u = std::min(c.min_u, u.minCoeff());
  c.max_u = std::max(c.max_u, u.maxCoeff());
  c.min_v = std::min(c.min_v, v.minCoeff());

  const FieldXd u_clamped = u.max(0.0).min(1.0);
  const FieldXd v_clamped = v.max(0.0);
  c.l1_total += ((u - u_clamped).abs().sum() + (v - v_clamped).abs().sum()) * domain.dx();
  c.events += (u != u_clamped).count() + (v != v_clamped).count();

  state.u = u_clamped;
  state.v = v_clamped;
  state.t += dt;
  state.v_sup_running = std::max(state.v_sup_running, state.v.maxCoeff());
  return state;
}

const FrontTrace* SimOutput::trace(Species species, double threshold) const {
  for (const auto& tr : fronts) {
    if (tr.species == species && std::abs(tr.threshold - threshold) <= 1e-12 * std::max(1.0, threshold)) {
      return &tr;
    }
  }
  return nullptr;
}

double default_predator_threshold(const KineticModel& model) {
  try {
    return 0.1 * std::min(1.0, equilibrium(model).v);
  } catch (const Error&) {
    return 0.05;
  }
}

namespace {

std::vector<double> merged_thresholds(std::vector<double> configured, std::initializer_list<double> defaults) {
  for (double d : defaults) configured.push_back(d);
  std::sort(configured.begin(), configured.end());
  configured.erase(std::unique(configured.begin(), configured.end(),
                               [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, a); }),
                   configured.end());
  return configured;
}

bool same_time(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); }

}  // namespace

SimOutput run_simulation(const SimConfig& config) {
  validate(config);
  const KineticModel model = build_model(config);
  if (!config.allow_unverified_model) {
    const AssumptionReport report = check_assumptions(model);
    if (report.any_fail()) {
      throw Error(ErrorCode::Config, "model '" + model.name +
                                         "' fails the standing assumption checks; set model.allow_unverified to override");
    }
  }

  const Domain& domain = config.domain;
  SimOutput out;
  out.config = config;
  out.dt_max = max_stable_dt(domain, model.d, config.time.dt_safety);
  const double T = config.time.T;
  const double macro = 50.0 * out.dt_max;

  for (double th : merged_thresholds(config.fronts.thresholds_u, {kDefaultPreyThreshold, kOrderThreshold})) {
    out.fronts.push_back({Species::Prey, th, {}});
  }
  for (double th : merged_thresholds(config.fronts.thresholds_v,
                                     {default_predator_threshold(model), kOrderThreshold})) {
    out.fronts.push_back({Species::Predator, th, {}});
  }

  std::vector<double> snaps = config.time.snapshots;
  snaps.push_back(T);
  std::sort(snaps.begin(), snaps.end());
  snaps.erase(std::unique(snaps.begin(), snaps.end(), same_time), snaps.end());

  SimState state = init_state(config);
  const double guard = domain.length() - (10.0 * domain.dx() + 5.0);

  // Returns false when a front reached the guard band.
  auto record_fronts = [&]() {
    for (auto& tr : out.fronts) {
      const FieldXd& f = tr.species == Species::Prey ? state.u : state.v;
      tr.samples.push_back({state.t, front_position(f, domain, tr.threshold)});
    }
    for (Species sp : {Species::Prey, Species::Predator}) {
      const auto pos = front_position(sp == Species::Prey ? state.u : state.v, domain, kGuardThreshold);
      if (pos && *pos >= guard) {
        out.aborted = BoundaryHit{state.t, sp, *pos};
        return false;
      }
    }
    return true;
  };

  std::size_t next_snap = 0;
  if (same_time(snaps.front(), 0.0)) {
    out.snapshots.push_back(state);
    ++next_snap;
  }
  if (!record_fronts()) {
    out.final_state = state;
    return out;
  }

  long macro_index = 1;
  while (!same_time(state.t, T) && state.t < T) {
    const double t_macro = static_cast<double>(macro_index) * macro;
    double target = std::min(T, t_macro);
    if (next_snap < snaps.size()) target = std::min(target, snaps[next_snap]);

    const double gap = target - state.t;
    if (gap > 0.0) {
      const auto n = static_cast<long>(std::ceil(gap / out.dt_max - 1e-9));
      const double h = gap / static_cast<double>(n);
      for (long k = 0; k < n; ++k) state = step(std::move(state), model, domain, h);
      out.steps += n;
    }
    state.t = target;

    const bool at_snapshot = next_snap < snaps.size() && same_time(target, snaps[next_snap]);
    if (at_snapshot) {
      out.snapshots.push_back(state);
      ++next_snap;
    }
    const bool at_macro = same_time(target, t_macro);
    if (at_macro) ++macro_index;
    if (at_macro || same_time(target, T)) {
      if (!record_fronts()) break;
    }
  }
  out.final_state = state;
  return out;
}

}  // namespace preyspread

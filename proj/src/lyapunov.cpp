#include "preyspread/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "preyspread/error.hpp"
#include "preyspread/quadrature.hpp"

namespace preyspread {

namespace {

void require_interior(double u, double v) {
  if (!(u > 0.0 && u < 1.0 && v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << "(" << u << ", " << v << ") is outside O = (0,1) x (0,inf)";
    throw Error(ErrorCode::Domain, os.str());
  }
}

double entropy(double x, double x_star) { return x - x_star - x_star * std::log(x / x_star); }

}  // namespace

LyapunovFn lyapunov_for(const KineticModel& model) {
  LyapunovFn fn;
  if (model.kind == ModelKind::Lotka) {
    const double mu = model.param("mu");
    const Equilibrium eq = equilibrium(model);
    fn.name = "lotka";
    fn.eq = eq;
    fn.phi = [mu, eq](double u, double v) { return mu * entropy(u, eq.u) + entropy(v, eq.v); };
    fn.grad = [mu, eq](double u, double v) {
      return Eigen::Vector2d(mu * (1.0 - eq.u / u), 1.0 - eq.v / v);
    };
    return fn;
  }
  if (model.kind == ModelKind::Holling2) {
    if (model.param("n") != 1.0) {
      throw Error(ErrorCode::ModelDefinition, "Holling II Lyapunov function is only available for n = 1");
    }
    const double b = model.param("b"), m = model.param("m"), mu = model.param("mu");
    const Equilibrium eq = equilibrium(model);
    if (b < m * eq.v) {
      std::ostringstream os;
      os << "Holling II Lyapunov function requires b >= m v* (b = " << b << ", m v* = " << m * eq.v << ")";
      throw Error(ErrorCode::ModelDefinition, os.str());
    }
    // Pi(u*) / Pi(s) = ratio (b + s) / s
    const double ratio = eq.u / (b + eq.u);
    fn.name = "holling2";
    fn.eq = eq;
    fn.phi = [=](double u, double v) {
      const auto integrand = [=](double s) { return 1.0 - ratio * (b + s) / s; };
      return mu * integrate(integrand, eq.u, u, 1e-10) + entropy(v, eq.v);
    };
    fn.grad = [=](double u, double v) {
      return Eigen::Vector2d(mu * (1.0 - ratio * (b + u) / u), 1.0 - eq.v / v);
    };
    return fn;
  }
  throw Error(ErrorCode::ModelDefinition, "no Lyapunov function available for model '" + model.name + "'");
}

double lyapunov_value(const LyapunovFn& fn, double u, double v) {
  require_interior(u, v);
  return fn.phi(u, v);
}

Eigen::Vector2d lyapunov_gradient(const LyapunovFn& fn, double u, double v) {
  require_interior(u, v);
  return fn.grad(u, v);
}

double dissipation(const KineticModel& model, const LyapunovFn& fn, double u, double v) {
  require_interior(u, v);
  const Rates r = eval_kinetics(model, u, v);
  return Eigen::Vector2d(u * r.F, v * r.G).dot(fn.grad(u, v));
}

OdeTrajectory ode_integrate(const KineticModel& model, double u0, double v0, double T, double dt, int stride) {
  require_interior(u0, v0);
  if (!(dt > 0.0 && dt <= 1e-2)) throw Error(ErrorCode::Domain, "dt must lie in (0, 1e-2]");
  if (!(T >= 0.0) || !std::isfinite(T)) throw Error(ErrorCode::Domain, "T must be finite and >= 0");
  stride = std::max(stride, 10);

  OdeTrajectory out;
  auto rhs = [&](const Eigen::Vector2d& y) {
    const double u = std::max(y(0), 0.0), v = std::max(y(1), 0.0);
    return Eigen::Vector2d(y(0) * model.F(u, v), y(1) * model.G(u, v));
  };

  const auto n = static_cast<long>(std::ceil(T / dt - 1e-9));
  const double h = n > 0 ? T / static_cast<double>(n) : 0.0;
  Eigen::Vector2d y(u0, v0);
  out.points.push_back({0.0, y(0), y(1)});
  for (long k = 1; k <= n; ++k) {
    const Eigen::Vector2d k1 = rhs(y);
    const Eigen::Vector2d k2 = rhs(y + 0.5 * h * k1);
    const Eigen::Vector2d k3 = rhs(y + 0.5 * h * k2);
    const Eigen::Vector2d k4 = rhs(y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!y.allFinite()) {
      std::ostringstream os;
      os << "kinetic ODE became non-finite at t = " << k * h;
      throw Error(ErrorCode::NonFinite, os.str());
    }
    if (!(y(0) > 0.0 && y(0) < 1.0 && y(1) > 0.0)) out.boundary_exit = true;
    if (k % stride == 0 || k == n) out.points.push_back({k * h, y(0), y(1)});
  }
  return out;
}

bool LyapunovTrace::nonincreasing(double slack) const {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i].second > values[i - 1].second + slack) return false;
  }
  return true;
}

LyapunovTrace lyapunov_trace(const LyapunovFn& fn, const OdeTrajectory& trajectory) {
  LyapunovTrace trace;
  trace.values.reserve(trajectory.points.size());
  for (const auto& p : trajectory.points) trace.values.emplace_back(p.t, lyapunov_value(fn, p.u, p.v));
  return trace;
}

FinalZoneError final_zone_error(const SimState& snapshot, const Domain& domain, const KineticModel& model,
                                double c) {
  if (snapshot.u.size() != domain.n_points() || snapshot.v.size() != domain.n_points()) {
    throw Error(ErrorCode::Domain, "snapshot does not match domain");
  }
  if (!(snapshot.t > 0.0)) throw Error(ErrorCode::Domain, "final_zone_error needs snapshot time > 0");
  if (!(c >= 0.0 && c < domain.length() / snapshot.t)) throw Error(ErrorCode::Domain, "need 0 <= c < L/t");

  const Equilibrium eq = equilibrium(model);
  const FieldXd err = (snapshot.u - eq.u).abs() + (snapshot.v - eq.v).abs();
  const FieldXd r = domain.radius();

  FinalZoneError out;
  out.value = (r <= c * snapshot.t).select(err, 0.0).maxCoeff();
  if (model.d != 1.0) {
    out.warning = "d != 1: no final-zone convergence result is known; value reported without a reference";
  }
  return out;
}

}  // namespace preyspread

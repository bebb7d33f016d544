#pragma once

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "preyspread/domain.hpp"
#include "preyspread/model.hpp"
#include "preyspread/pde.hpp"

namespace preyspread {

/// Lyapunov function of the kinetic system on O = (0,1) x (0,inf), with its
/// minimum (zero) at the interior equilibrium.
struct LyapunovFn {
  std::string name;
  Equilibrium eq{};
  std::function<double(double, double)> phi;
  std::function<Eigen::Vector2d(double, double)> grad;
};

/// Lotka:    mu (u - u* - u* ln(u/u*)) + (v - v* - v* ln(v/v*)).
/// Holling2: mu int_{u*}^u (Pi(s) - Pi(u*)) / Pi(s) ds + (v - v* - v* ln(v/v*)),
///           valid for n = 1 and b >= m v*.
/// Throws ModelDefinition when no function is available for the model.
LyapunovFn lyapunov_for(const KineticModel& model);

/// Throws Domain outside O.
double lyapunov_value(const LyapunovFn& fn, double u, double v);
Eigen::Vector2d lyapunov_gradient(const LyapunovFn& fn, double u, double v);

/// (u F, v G) . grad Phi at (u, v).
double dissipation(const KineticModel& model, const LyapunovFn& fn, double u, double v);

struct OdePoint {
  double t;
  double u;
  double v;
};

struct OdeTrajectory {
  std::vector<OdePoint> points;
  bool boundary_exit = false;  // the state left O; evaluation continued clamped
};

/// Fixed-step RK4 for u' = u F, v' = v G. Requires (u0, v0) in O and
/// 0 < dt <= 1e-2; records every `stride` steps (at least 10) and the end point.
OdeTrajectory ode_integrate(const KineticModel& model, double u0, double v0, double T, double dt,
                            int stride = 10);

enum class TraceSource { Ode, PdeSupBall };

struct LyapunovTrace {
  TraceSource source = TraceSource::Ode;
  std::optional<double> c;  // ball speed for PdeSupBall
  std::vector<std::pair<double, double>> values;  // (t, Phi)

  bool nonincreasing(double slack = 1e-8) const;
};

LyapunovTrace lyapunov_trace(const LyapunovFn& fn, const OdeTrajectory& trajectory);

struct FinalZoneError {
  double value = 0.0;
  std::optional<std::string> warning;
};

/// sup over |x| <= c t of |u - u*| + |v - v*|. Carries a warning for d != 1,
/// where no convergence statement is available.
FinalZoneError final_zone_error(const SimState& snapshot, const Domain& domain, const KineticModel& model,
                                double c);

}  // namespace preyspread

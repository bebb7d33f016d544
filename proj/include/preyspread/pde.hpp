#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "preyspread/domain.hpp"
#include "preyspread/front.hpp"
#include "preyspread/model.hpp"

namespace preyspread {

inline constexpr double kBoundTolerance = 1e-9;
inline constexpr double kMaxDtSafety = 0.9;
inline constexpr double kGuardThreshold = 1e-4;

struct InitSpec {
  double u_amp = 1.0;
  double v_amp = 0.0;
  double u_radius = 5.0;
  double v_radius = 5.0;
  std::optional<double> ramp_width;  // defaults to 2 dx
};

struct TimeSpec {
  double T = 100.0;
  double dt_safety = 0.4;
  std::vector<double> snapshots;
};

struct FrontSpec {
  std::vector<double> thresholds_u;
  std::vector<double> thresholds_v;
};

struct SimConfig {
  std::string model_name = "lotka";
  ParamMap params;  // includes d
  Domain domain = Domain::line(100.0, 0.25);
  InitSpec init;
  TimeSpec time;
  FrontSpec fronts;
  std::vector<double> c_grid;  // analysis speeds; empty selects a default grid
  std::string output_dir = "run";
  bool allow_unverified_model = false;
};

KineticModel build_model(const SimConfig& config);

/// Throws ErrorCode::Config on invalid combinations.
void validate(const SimConfig& config);

/// Bookkeeping of the post-step projection onto 0 <= u <= 1, v >= 0.
struct ClampStats {
  double l1_total = 0.0;  // sum over steps of sum_i |clamped amount| dx
  long events = 0;
  double min_u = std::numeric_limits<double>::infinity();   // pre-clamp extrema
  double max_u = -std::numeric_limits<double>::infinity();
  double min_v = std::numeric_limits<double>::infinity();
};

struct SimState {
  double t = 0.0;
  FieldXd u;
  FieldXd v;
  double v_sup_running = 0.0;
  ClampStats clamp;
};

/// Cosine-smoothed compact bumps: 1 inside the radius, 0 beyond radius + width.
FieldXd ramp(const Domain& domain, double radius, double width);

SimState init_state(const SimConfig& config);

/// dt_safety dx^2 / (2 N_eff max(d, 1)).
double max_stable_dt(const Domain& domain, double d, double dt_safety);

/// One Heun step followed by the clamp onto [0,1] x [0,inf).
/// Throws CflViolation if dt exceeds the bound at dt_safety = 0.9, NonFinite on
/// NaN/Inf.
SimState step(SimState state, const KineticModel& model, const Domain& domain, double dt);

struct BoundaryHit {
  double t;
  Species species;
  double position;
};

struct SimOutput {
  SimConfig config;
  std::vector<SimState> snapshots;
  std::vector<FrontTrace> fronts;
  SimState final_state;
  std::optional<BoundaryHit> aborted;  // FrontReachedBoundary; data valid up to aborted->t
  double dt_max = 0.0;
  long steps = 0;

  const FrontTrace* trace(Species species, double threshold) const;
};

/// Default tracking threshold for the predator: 0.1 min(1, v*) when an interior
/// equilibrium exists, 0.05 otherwise.
double default_predator_threshold(const KineticModel& model);
inline constexpr double kDefaultPreyThreshold = 0.1;
inline constexpr double kOrderThreshold = 1e-3;

/// Steps from 0 to T. Fronts are recorded every 50 dt_max; snapshots at the
/// configured times (T is always included). Returns early with `aborted` set
/// when an outermost 1e-4 front comes within 10 dx + 5 of the boundary.
SimOutput run_simulation(const SimConfig& config);

}  // namespace preyspread

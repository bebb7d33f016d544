#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "preyspread/front.hpp"
#include "preyspread/pde.hpp"
#include "preyspread/speeds.hpp"

namespace preyspread {

struct SpeedEstimate {
  double slope = 0.0;
  double intercept = 0.0;
  double t0 = 0.0;
  double t1 = 0.0;
  double residual_rms = 0.0;
  double tail_quotient = 0.0;  // (x(t1) - x(t1/2)) / (t1 - t1/2)
  std::size_t samples = 0;

  /// Tail quotient when it disagrees with the slope by more than 2%, else the slope.
  double preferred() const;
};

/// Least-squares slope over [window_fraction T, T] plus the tail quotient.
/// window_fraction must leave a window of at least a third of the run.
SpeedEstimate estimate_speed(const FrontTrace& trace, double window_fraction = 0.5);

enum class Zone { LeadingEdge, Intermediate, Final, Unclassified };

std::string_view to_string(Zone zone) noexcept;

struct ZoneTolerances {
  double lead = 0.02;
  double final = 0.1;
};

Zone classify_zone(double u, double v, const std::optional<Equilibrium>& eq, const ZoneTolerances& tol);

struct ZoneSample {
  double c;
  double u;
  double v;
  Zone label;
};

struct ZoneProfile {
  double t = 0.0;
  std::vector<ZoneSample> samples;
  ZoneTolerances tolerances;
};

enum class Interpolation { Linear, Cubic };

/// Field value at radial distance r (positive side for Line1D).
double sample_at(const FieldXd& field, const Domain& domain, double r, Interpolation interp = Interpolation::Linear);

ZoneProfile zone_profile(const SimState& snapshot, const Domain& domain, const KineticModel& model,
                         std::span<const double> c_grid, const ZoneTolerances& tol = {},
                         Interpolation interp = Interpolation::Linear, bool use_equilibrium = true);

/// sup over |x| >= radius and inf/sup over |x| <= radius of a field.
double sup_beyond(const FieldXd& field, const Domain& domain, double radius);
double sup_within(const FieldXd& field, const Domain& domain, double radius);
double inf_within(const FieldXd& field, const Domain& domain, double radius);

/// Speed margins are margin_fraction * c*, added to or subtracted from c* and c**.
struct VerificationTolerances {
  double margin_fraction = 0.075;
  ZoneTolerances zones;
  double positivity_floor = 0.05;
  double u_speed_rel = 0.05;
  double v_speed_rel = 0.08;
  double window_fraction = 0.5;
  double min_time = 50.0;
  double order_cells = 5.0;  // allowed lead of the 1e-3 predator front, in cells
  int intermediate_points = 9;

  // Explicit speeds replacing the margin-derived defaults.
  std::optional<double> prey_lead_speed;      // default c* + margin
  std::optional<double> predator_lead_speed;  // default c** + margin, slow regime
  std::optional<double> final_extent_speed;   // default min(c*, c**) - margin
  std::vector<double> intermediate_speeds;    // default grid in (c** + margin, c* - margin)
  std::optional<double> intermediate_v_tol;   // default zones.lead
  bool intermediate_last_only = false;
};

enum class CheckStatus { Pass, Fail, Indeterminate, Reported };

std::string_view to_string(CheckStatus status) noexcept;

struct Check {
  std::string name;
  double t = 0.0;
  CheckStatus status = CheckStatus::Indeterminate;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct VerificationReport {
  Regime regime = Regime::SlowPredator;
  double c_star = 0.0;
  double c_star_star = 0.0;
  std::optional<SpeedEstimate> u_speed;
  std::optional<SpeedEstimate> v_speed;
  std::vector<Check> checks;
  std::vector<std::string> notes;

  bool all_pass() const;    // every check Pass or Reported
  bool any_failed() const;
  const Check* find(std::string_view name, std::optional<double> t = std::nullopt) const;
};

/// Regime-dependent checklist on the last three snapshots plus empirical front
/// speeds. Runs shorter than `min_time` report every check Indeterminate.
VerificationReport verify_spreading(const SimOutput& output, const KineticModel& model,
                                    const VerificationTolerances& tol = {});

/// Analysis speeds used when a config does not list any: 0 .. 1.2 c* in 25 steps,
/// capped at L / t.
std::vector<double> default_c_grid(double c_star, double length, double t);

}  // namespace preyspread

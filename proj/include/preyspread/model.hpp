#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace preyspread {

/// Per-capita growth rate as a function of (prey, predator) densities.
using RateFn = std::function<double(double u, double v)>;

/// Limit of a rate as v -> +inf, as a function of u. May return -inf.
using LimitFn = std::function<double(double u)>;

using ParamMap = std::map<std::string, double, std::less<>>;

enum class ModelKind { Lotka, Holling2, Generic };

struct Rates {
  double F;
  double G;
};

struct Equilibrium {
  double u;
  double v;
};

/// Kinetics of the system
///   u_t - d Δu = u F(u, v)
///   v_t -   Δv = v G(u, v)
///
/// Immutable once built; the callables must be pure.
struct KineticModel {
  std::string name;
  ModelKind kind = ModelKind::Generic;
  double d = 1.0;
  RateFn F;
  RateFn G;
  std::optional<LimitFn> F_inf;
  std::optional<LimitFn> G_inf;
  ParamMap params;

  double param(std::string_view key) const;
};

// Presets. h(u) = 1 - u for both.
//   lotka:    F = 1 - u - b v,               G = mu b u - a
//   holling2: F = 1 - u - Pi(u) v / u,       G = mu Pi(u) - a,   Pi(u) = m u^n / (b + u^n)
KineticModel lotka(double a, double b, double mu, double d = 1.0);
KineticModel holling2(double a, double b, double m, double mu, double n = 1.0, double d = 1.0);

/// Builds "lotka" or "holling2" from named parameters; missing keys take the
/// preset defaults, unknown keys are a config error.
KineticModel make_preset(std::string_view name, const ParamMap& params);

ParamMap preset_defaults(std::string_view name);

/// Parses "a=1.5,b=1,mu=2".
ParamMap parse_params(std::string_view text);

// ---------------------------------------------------------------------------

Rates eval_kinetics(const KineticModel& model, double u, double v);

enum class ClauseStatus { Pass, Fail, Indeterminate };

enum class Clause {
  PreyDecreasingInPredator,    // v -> F(u, v) strictly decreasing for u > 0
  PreyMonostable,              // F(1, 0) = 0 and F(u, 0) > 0 on [0, 1)
  PreyKpp,                     // F(u, 0) <= F(0, 0)
  PredatorIncreasingInPrey,    // u -> G(u, v) nondecreasing
  PredatorSignChange,          // G(0, 0) < 0 < G(1, 0)
  PredatorKpp,                 // v -> G(u, v) nonincreasing
};

inline constexpr Clause kAllClauses[] = {
    Clause::PreyDecreasingInPredator, Clause::PreyMonostable, Clause::PreyKpp,
    Clause::PredatorIncreasingInPrey, Clause::PredatorSignChange, Clause::PredatorKpp};

std::string_view to_string(Clause clause) noexcept;
std::string_view to_string(ClauseStatus status) noexcept;

/// A sample where a clause was refuted. Monotonicity clauses compare two
/// points; pointwise clauses repeat the single point in both slots.
struct Witness {
  double u1, v1, value1;
  double u2, v2, value2;
};

struct ClauseResult {
  Clause clause;
  ClauseStatus status = ClauseStatus::Pass;
  std::vector<Witness> witnesses;
};

struct SamplingGrid {
  int u_samples = 33;
  double v_max = 4.0;
  int v_samples = 33;
};

struct AssumptionReport {
  std::vector<ClauseResult> clauses;
  SamplingGrid grid;

  const ClauseResult& operator[](Clause clause) const;
  bool all_pass() const;
  bool any_fail() const;
};

/// Refutation by sampling on [0,1] x [0, v_max]: Pass means no violation was
/// found on the grid, never a proof.
AssumptionReport check_assumptions(const KineticModel& model, const SamplingGrid& grid = {});

/// inf { m in [0,1] : F_inf(u) < 0 for all u >= m }, located on a grid scan of
/// the suffix supremum and refined by bisection to `tol`.
double compute_m_star(const LimitFn& F_inf, double tol = 1e-9);

enum class Verdict { Satisfied, Violated, Indeterminate };

std::string_view to_string(Verdict verdict) noexcept;

struct DissipativityReport {
  double m_star = 0.0;
  double G_at_mstar_inf = 0.0;
  double G_at_zero_inf = 0.0;
  Verdict verdict = Verdict::Indeterminate;
};

DissipativityReport check_weak_dissipativity(const KineticModel& model, double tol = 1e-9);

/// Interior zero of (F, G) in 0 < u < 1, v > 0. Closed forms for presets,
/// damped Newton from (0.5, 0.5) otherwise.
Equilibrium equilibrium(const KineticModel& model, double tol = 1e-12);

}  // namespace preyspread

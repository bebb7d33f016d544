#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "preyspread/model.hpp"

namespace preyspread {

/// Per-capita growth q -> f(q) of a scalar monostable equation.
using GrowthFn = std::function<double(double q)>;

enum class ShootKind { HitsZero, TurnsBack, WaveLike };

std::string_view to_string(ShootKind kind) noexcept;

struct ProfileSample {
  double z;
  double q;
  double dq;
};

struct ShootOutcome {
  ShootKind kind = ShootKind::WaveLike;
  std::optional<double> b;  // first zero of q, present iff HitsZero
  std::vector<ProfileSample> profile;
};

struct ShootSettings {
  double convergence = 1e-6;  // |q| + |q'| at z_max for WaveLike
  int profile_stride = 10;    // keep every n-th RK4 step
};

/// Integrates d q'' + c q' + q f(q) = 0 from (q, q') = (alpha, 0) with fixed-step
/// RK4 and classifies the trajectory.
///
/// Throws StepTooLarge if |q| exceeds 2, Inconclusive if z_max is reached
/// without q and q' having decayed below the convergence threshold.
ShootOutcome shoot_profile(const GrowthFn& f, double d, double c, double alpha, double z_max,
                           double dz, const ShootSettings& settings = {});

/// Smallest u in (0, 1] with f(u) <= 0, by grid scan and bisection.
double first_nonpositive(const GrowthFn& f);

/// Named scalar growth rates: "fisher" (1 - q), "kpp:r" (r (1 - q)),
/// "pushed:a" ((1 - q)(q + a)). Throws Config on an unknown name.
GrowthFn growth_preset(std::string_view spec);

struct WaveSpeedResult {
  double c_min = 0.0;
  double p = 1.0;       // positive zero of f
  double alpha = 0.0;   // starting density used for the shots
  bool alpha_retry_used = false;
  int shots = 0;
};

/// Feasibility threshold of c for monotone fronts connecting p to 0, found by
/// bisection over [0, 2 sqrt(d sup f) + 1]. `p` may be supplied when known.
WaveSpeedResult find_minimal_wave_speed(const GrowthFn& f, double d, double tol = 1e-4,
                                        std::optional<double> p = std::nullopt);

inline double minimal_wave_speed(const GrowthFn& f, double d, double tol = 1e-4) {
  return find_minimal_wave_speed(f, d, tol).c_min;
}

/// min { u >= 0 : F(u, eps) <= 0 }.
double p_epsilon(const KineticModel& model, double eps);

struct EpsilonPoint {
  double eps;
  double p;
  double c;
};

using EpsilonCurve = std::vector<EpsilonPoint>;

/// Minimal speeds of u_t = d u_xx + u F(u, eps) for each eps, sorted by eps.
EpsilonCurve c_epsilon_curve(const KineticModel& model, std::vector<double> eps_list,
                             double tol = 1e-4);

/// p and c nonincreasing in eps, p <= 1, c <= c_star (+ slack).
bool is_monotone(const EpsilonCurve& curve, double c_star, double slack = 0.0);

}  // namespace preyspread

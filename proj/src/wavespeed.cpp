#include "preyspread/wavespeed.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "preyspread/error.hpp"

namespace preyspread {

std::string_view to_string(ShootKind kind) noexcept {
  switch (kind) {
    case ShootKind::HitsZero: return "HitsZero";
    case ShootKind::TurnsBack: return "TurnsBack";
    case ShootKind::WaveLike: return "WaveLike";
  }
  return "unknown";
}

ShootOutcome shoot_profile(const GrowthFn& f, double d, double c, double alpha, double z_max,
                           double dz, const ShootSettings& settings) {
  if (!(d > 0.0)) throw Error(ErrorCode::Domain, "diffusivity must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::Domain, "alpha must lie in (0, 1)");
  if (!(c >= 0.0)) throw Error(ErrorCode::Domain, "speed must be nonnegative");
  if (!(dz > 0.0) || dz > 1e-2 * std::sqrt(d) * (1.0 + 1e-12)) {
    throw Error(ErrorCode::Domain, "dz must lie in (0, 1e-2 sqrt(d)]");
  }
  if (!(z_max > dz)) throw Error(ErrorCode::Domain, "z_max must exceed dz");

  using State = Eigen::Vector2d;  // (q, q')
  auto rhs = [&](const State& y) -> State {
    return {y(1), -(c * y(1) + y(0) * f(y(0))) / d};
  };

  ShootOutcome out;
  const int stride = std::max(1, settings.profile_stride);
  const auto n_steps = static_cast<long>(std::ceil(z_max / dz - 1e-9));

  State y(alpha, 0.0);
  out.profile.push_back({0.0, y(0), y(1)});
  for (long k = 0; k < n_steps; ++k) {
    const double z = k * dz;
    const State k1 = rhs(y);
    const State k2 = rhs(y + 0.5 * dz * k1);
    const State k3 = rhs(y + 0.5 * dz * k2);
    const State k4 = rhs(y + dz * k3);
    const State next = y + dz / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double z_next = z + dz;

    if (!next.allFinite() || std::abs(next(0)) > 2.0) {
      throw Error(ErrorCode::StepTooLarge, "shooting trajectory left |q| <= 2");
    }
    if (next(0) <= 0.0) {
      out.kind = ShootKind::HitsZero;
      out.b = z + dz * y(0) / (y(0) - next(0));
      out.profile.push_back({z_next, next(0), next(1)});
      return out;
    }
    if (next(1) > 0.0) {
      out.kind = ShootKind::TurnsBack;
      out.profile.push_back({z_next, next(0), next(1)});
      return out;
    }
    y = next;
    if ((k + 1) % stride == 0 || k + 1 == n_steps) out.profile.push_back({z_next, y(0), y(1)});
  }

  if (std::abs(y(0)) + std::abs(y(1)) < settings.convergence) {
    out.kind = ShootKind::WaveLike;
    return out;
  }
  std::ostringstream os;
  os << "z_max reached with |q|+|q'| = " << std::abs(y(0)) + std::abs(y(1)) << " at c = " << c;
  throw Error(ErrorCode::Inconclusive, os.str());
}

double first_nonpositive(const GrowthFn& f) {
  constexpr int kGrid = 1000;
  double prev = 0.0;
  if (!(f(0.0) > 0.0)) throw Error(ErrorCode::Domain, "f(0) must be positive");
  for (int k = 1; k <= kGrid; ++k) {
    const double u = static_cast<double>(k) / kGrid;
    if (f(u) <= 0.0) {
      double lo = prev, hi = u;
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) <= 0.0 ? hi : lo) = mid;
      }
      return hi;
    }
    prev = u;
  }
  throw Error(ErrorCode::Domain, "f has no zero in (0, 1]; not monostable on [0, 1]");
}

GrowthFn growth_preset(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  std::optional<double> arg;
  if (colon != std::string_view::npos) {
    const std::string_view text = spec.substr(colon + 1);
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
      throw Error(ErrorCode::Config, "bad growth preset argument in '" + std::string(spec) + "'");
    }
    arg = value;
  }
  if (name == "fisher" && !arg) return [](double q) { return 1.0 - q; };
  if (name == "kpp" && arg && *arg > 0.0) {
    const double r = *arg;
    return [r](double q) { return r * (1.0 - q); };
  }
  if (name == "pushed" && arg && *arg > 0.0) {
    const double a = *arg;
    return [a](double q) { return (1.0 - q) * (q + a); };
  }
  throw Error(ErrorCode::Config, "unknown growth preset '" + std::string(spec) + "' (fisher, kpp:r, pushed:a)");
}

WaveSpeedResult find_minimal_wave_speed(const GrowthFn& f, double d, double tol,
                                        std::optional<double> p) {
  if (!(d > 0.0) || !(tol > 0.0)) throw Error(ErrorCode::Domain, "need d > 0 and tol > 0");

  WaveSpeedResult result;
  result.p = p ? *p : first_nonpositive(f);
  if (!(result.p > 0.0 && result.p <= 1.0)) throw Error(ErrorCode::Domain, "p must lie in (0, 1]");
  result.alpha = (1.0 - 1e-3) * result.p;

  double sup_f = 0.0;
  for (int k = 0; k <= 1000; ++k) sup_f = std::max(sup_f, f(result.p * k / 1000.0));
  const double c_hi = 2.0 * std::sqrt(d * sup_f) + 1.0;
  const double z_max = 200.0 * std::sqrt(d);
  const double dz = 5e-3 * std::sqrt(d);
  ShootSettings settings;
  settings.profile_stride = 1 << 20;

  // TurnsBack means alpha sat below the unknown alpha(c); retry closer to p.
  auto feasible = [&](double c) {
    double alpha = result.alpha;
    for (int attempt = 0;; ++attempt) {
      ++result.shots;
      const ShootOutcome o = shoot_profile(f, d, c, alpha, z_max, dz, settings);
      if (o.kind == ShootKind::HitsZero) return false;
      if (o.kind == ShootKind::WaveLike) return true;
      result.alpha_retry_used = true;
      if (attempt == 3) return false;
      alpha = result.p * (1.0 - (1.0 - alpha / result.p) / 10.0);
    }
  };

  constexpr int kScan = 9;
  std::vector<double> cs(kScan);
  std::vector<bool> ok(kScan);
  for (int i = 0; i < kScan; ++i) {
    cs[i] = c_hi * i / (kScan - 1);
    ok[i] = feasible(cs[i]);
  }
  if (ok.front()) throw Error(ErrorCode::BisectionBracketFailure, "c = 0 is feasible");
  if (!ok.back()) throw Error(ErrorCode::BisectionBracketFailure, "c_hi is infeasible");
  const auto first_ok = std::distance(ok.begin(), std::find(ok.begin(), ok.end(), true));
  for (auto i = first_ok; i < kScan; ++i) {
    if (!ok[i]) {
      std::ostringstream os;
      os << "feasibility not monotone in c: c = " << cs[first_ok] << " feasible but c = " << cs[i]
         << " infeasible";
      throw Error(ErrorCode::BisectionBracketFailure, os.str());
    }
  }

  double lo = cs[first_ok - 1];
  double hi = cs[first_ok];
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  result.c_min = 0.5 * (lo + hi);
  return result;
}

double p_epsilon(const KineticModel& model, double eps) {
  if (!(eps >= 0.0)) throw Error(ErrorCode::Domain, "eps must be nonnegative");
  if (!(eval_kinetics(model, 0.0, eps).F > 0.0)) {
    throw Error(ErrorCode::Domain, "F(0, eps) <= 0: eps too large for a monostable reduction");
  }
  return first_nonpositive([&](double u) { return model.F(u, eps); });
}

EpsilonCurve c_epsilon_curve(const KineticModel& model, std::vector<double> eps_list, double tol) {
  std::sort(eps_list.begin(), eps_list.end());
  EpsilonCurve curve;
  curve.reserve(eps_list.size());
  for (double eps : eps_list) {
    const double p = p_epsilon(model, eps);
    const GrowthFn f = [&model, eps](double q) { return model.F(q, eps); };
    curve.push_back({eps, p, find_minimal_wave_speed(f, model.d, tol, p).c_min});
  }
  return curve;
}

bool is_monotone(const EpsilonCurve& curve, double c_star, double slack) {
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (curve[i].p > 1.0 || curve[i].c > c_star + slack) return false;
    if (i > 0 && (curve[i].p > curve[i - 1].p || curve[i].c > curve[i - 1].c + slack)) return false;
  }
  return true;
}

}  // namespace preyspread

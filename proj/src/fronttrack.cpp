#include "preyspread/fronttrack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "preyspread/error.hpp"

namespace preyspread {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Position at time t, linearly interpolated between present samples.
std::optional<double> position_at(const FrontTrace& trace, double t) {
  const auto& s = trace.samples;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!s[i].x) continue;
    if (std::abs(s[i].t - t) <= 1e-9 * std::max(1.0, t)) return s[i].x;
    if (s[i].t > t) {
      for (std::size_t j = i; j-- > 0;) {
        if (s[j].x) {
          const double w = (t - s[j].t) / (s[i].t - s[j].t);
          return *s[j].x + w * (*s[i].x - *s[j].x);
        }
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

double SpeedEstimate::preferred() const {
  if (std::abs(slope - tail_quotient) > 0.02 * std::abs(tail_quotient)) return tail_quotient;
  return slope;
}

SpeedEstimate estimate_speed(const FrontTrace& trace, double window_fraction) {
  if (!(window_fraction >= 0.0 && window_fraction <= 2.0 / 3.0)) {
    throw Error(ErrorCode::Domain, "window_fraction must lie in [0, 2/3]");
  }
  if (trace.samples.empty()) throw Error(ErrorCode::InsufficientData, "empty front trace");

  SpeedEstimate est;
  est.t1 = trace.samples.back().t;
  est.t0 = window_fraction * est.t1;

  std::vector<double> ts, xs;
  for (const auto& s : trace.samples) {
    if (s.x && s.t >= est.t0 - 1e-9 * std::max(1.0, est.t0)) {
      ts.push_back(s.t);
      xs.push_back(*s.x);
    }
  }
  if (ts.size() < 10) {
    throw Error(ErrorCode::InsufficientData,
                "need at least 10 present front samples in the fit window, got " + std::to_string(ts.size()));
  }
  est.samples = ts.size();

  const auto n = static_cast<double>(ts.size());
  double tm = 0.0, xm = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    tm += ts[i];
    xm += xs[i];
  }
  tm /= n;
  xm /= n;
  double stt = 0.0, stx = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    stt += (ts[i] - tm) * (ts[i] - tm);
    stx += (ts[i] - tm) * (xs[i] - xm);
  }
  if (!(stt > 0.0)) throw Error(ErrorCode::InsufficientData, "fit window has no time spread");
  est.slope = stx / stt;
  est.intercept = xm - est.slope * tm;
  double ss = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double r = xs[i] - (est.intercept + est.slope * ts[i]);
    ss += r * r;
  }
  est.residual_rms = std::sqrt(ss / n);

  const auto x1 = position_at(trace, est.t1);
  const auto xh = position_at(trace, 0.5 * est.t1);
  if (!x1 || !xh) throw Error(ErrorCode::InsufficientData, "front absent at t1 or t1/2");
  est.tail_quotient = (*x1 - *xh) / (0.5 * est.t1);
  return est;
}

std::string_view to_string(Zone zone) noexcept {
  switch (zone) {
    case Zone::LeadingEdge: return "LeadingEdge";
    case Zone::Intermediate: return "Intermediate";
    case Zone::Final: return "Final";
    case Zone::Unclassified: return "Unclassified";
  }
  return "unknown";
}

Zone classify_zone(double u, double v, const std::optional<Equilibrium>& eq, const ZoneTolerances& tol) {
  if (u + v <= tol.lead) return Zone::LeadingEdge;
  if (std::abs(1.0 - u) <= tol.final && v <= tol.lead) return Zone::Intermediate;
  if (eq && std::abs(u - eq->u) + std::abs(v - eq->v) <= tol.final) return Zone::Final;
  if (std::min(u, v) >= tol.final && u <= 1.0 - tol.final) return Zone::Final;
  return Zone::Unclassified;
}

double sample_at(const FieldXd& field, const Domain& domain, double r, Interpolation interp) {
  if (field.size() != domain.n_points()) throw Error(ErrorCode::Domain, "field size does not match domain");
  if (!(r >= 0.0) || r > domain.length() * (1.0 + 1e-12)) {
    throw Error(ErrorCode::Domain, "sample radius outside the domain");
  }
  const Eigen::Index n = domain.n_points();
  const double s = std::min((r - domain.origin()) / domain.dx(), static_cast<double>(n - 1));
  const auto i0 = std::min<Eigen::Index>(static_cast<Eigen::Index>(std::floor(s)), n - 2);
  const double w = s - static_cast<double>(i0);

  if (interp == Interpolation::Linear || n < 4) return (1.0 - w) * field(i0) + w * field(i0 + 1);

  // Four-point Lagrange on nodes k..k+3 with s inside the stencil.
  const Eigen::Index k = std::clamp<Eigen::Index>(i0 - 1, 0, n - 4);
  const double y = s - static_cast<double>(k);
  double out = 0.0;
  for (int a = 0; a < 4; ++a) {
    double basis = 1.0;
    for (int b = 0; b < 4; ++b) {
      if (b != a) basis *= (y - b) / static_cast<double>(a - b);
    }
    out += basis * field(k + a);
  }
  return out;
}

ZoneProfile zone_profile(const SimState& snapshot, const Domain& domain, const KineticModel& model,
                         std::span<const double> c_grid, const ZoneTolerances& tol, Interpolation interp,
                         bool use_equilibrium) {
  if (!(snapshot.t > 0.0)) throw Error(ErrorCode::Domain, "zone profile needs snapshot time > 0");
  const double c_max = domain.length() / snapshot.t;
  std::optional<Equilibrium> eq;
  if (use_equilibrium) eq = equilibrium(model);

  ZoneProfile profile;
  profile.t = snapshot.t;
  profile.tolerances = tol;
  for (double c : c_grid) {
    if (!(c >= 0.0) || c > c_max * (1.0 + 1e-12)) {
      throw Error(ErrorCode::Domain, "analysis speed " + fmt(c) + " outside [0, L/t]");
    }
    const double r = std::min(c * snapshot.t, domain.length());
    const double u = sample_at(snapshot.u, domain, r, interp);
    const double v = sample_at(snapshot.v, domain, r, interp);
    profile.samples.push_back({c, u, v, classify_zone(u, v, eq, tol)});
  }
  return profile;
}

double sup_beyond(const FieldXd& field, const Domain& domain, double radius) {
  const FieldXd r = domain.radius();
  return (r >= radius).select(field, 0.0).maxCoeff();
}

double sup_within(const FieldXd& field, const Domain& domain, double radius) {
  const FieldXd r = domain.radius();
  return (r <= radius).select(field, -std::numeric_limits<double>::infinity()).maxCoeff();
}

double inf_within(const FieldXd& field, const Domain& domain, double radius) {
  const FieldXd r = domain.radius();
  return (r <= radius).select(field, std::numeric_limits<double>::infinity()).minCoeff();
}

std::string_view to_string(CheckStatus status) noexcept {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Indeterminate: return "indeterminate";
    case CheckStatus::Reported: return "reported";
  }
  return "unknown";
}

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) {
    return c.status == CheckStatus::Pass || c.status == CheckStatus::Reported;
  });
}

bool VerificationReport::any_failed() const {
  return std::any_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == CheckStatus::Fail; });
}

const Check* VerificationReport::find(std::string_view name, std::optional<double> t) const {
  const Check* found = nullptr;
  for (const auto& c : checks) {
    if (c.name != name) continue;
    if (t && std::abs(c.t - *t) > 1e-9 * std::max(1.0, *t)) continue;
    found = &c;
  }
  return found;
}

std::vector<double> default_c_grid(double c_star, double length, double t) {
  const double hi = t > 0.0 ? std::min(1.2 * c_star, length / t) : 1.2 * c_star;
  std::vector<double> grid(25);
  for (int i = 0; i < 25; ++i) grid[i] = hi * i / 24.0;
  return grid;
}

namespace {

Check upper_check(std::string name, double t, double measured, double threshold, std::string detail) {
  return {std::move(name), t, measured <= threshold ? CheckStatus::Pass : CheckStatus::Fail, measured, threshold,
          std::move(detail)};
}

Check lower_check(std::string name, double t, double measured, double threshold, std::string detail) {
  return {std::move(name), t, measured >= threshold ? CheckStatus::Pass : CheckStatus::Fail, measured, threshold,
          std::move(detail)};
}

void speed_check(VerificationReport& report, const SimOutput& output, Species species, double threshold,
                 double expected, double rel, double window, double t_end) {
  const std::string name = species == Species::Prey ? "prey_speed" : "predator_speed";
  const FrontTrace* trace = output.trace(species, threshold);
  if (!trace) {
    report.checks.push_back({name, t_end, CheckStatus::Indeterminate, kNaN, expected, "no front trace recorded"});
    return;
  }
  try {
    const SpeedEstimate est = estimate_speed(*trace, window);
    (species == Species::Prey ? report.u_speed : report.v_speed) = est;
    const double measured = est.preferred();
    const double err = std::abs(measured - expected) / expected;
    report.checks.push_back({name, t_end, err <= rel ? CheckStatus::Pass : CheckStatus::Fail, measured, expected,
                             "relative error " + fmt(err) + ", allowed " + fmt(rel) + "; slope " +
                                 fmt(est.slope) + ", tail quotient " + fmt(est.tail_quotient) +
                                 ", threshold " + fmt(threshold)});
  } catch (const Error& e) {
    report.checks.push_back({name, t_end, CheckStatus::Indeterminate, kNaN, expected, e.what()});
  }
}

}  // namespace

VerificationReport verify_spreading(const SimOutput& output, const KineticModel& model,
                                    const VerificationTolerances& tol) {
  if (output.aborted) {
    std::ostringstream os;
    os << "front of " << to_string(output.aborted->species) << " reached the boundary guard at t = "
       << output.aborted->t;
    throw Error(ErrorCode::FrontReachedBoundary, os.str());
  }
  SpeedReport speeds;
  try {
    speeds = speed_report(model);
  } catch (const Error& e) {
    throw Error(ErrorCode::RegimeUndetermined, e.what());
  }

  VerificationReport report;
  report.regime = speeds.regime;
  report.c_star = speeds.c_star;
  report.c_star_star = speeds.c_star_star;
  const double cs = speeds.c_star;
  const double css = speeds.c_star_star;
  const double m = tol.margin_fraction * cs;  // one absolute margin for every boundary speed
  const bool slow = speeds.regime == Regime::SlowPredator;
  const Domain& domain = output.config.domain;
  const double T = output.final_state.t;

  std::vector<const SimState*> snaps;
  for (const auto& s : output.snapshots) {
    if (s.t > 0.0) snaps.push_back(&s);
  }
  if (snaps.size() > 3) snaps.erase(snaps.begin(), snaps.end() - 3);

  const double prey_lead = tol.prey_lead_speed.value_or(cs + m);
  const double pred_lead = slow ? tol.predator_lead_speed.value_or(css + m) : prey_lead;
  const double extent = tol.final_extent_speed.value_or(std::min(cs, css) - m);

  std::vector<double> inter = tol.intermediate_speeds;
  if (slow && inter.empty()) {
    const double lo = css + m, hi = cs - m;
    if (hi > lo) {
      const int k = std::max(2, tol.intermediate_points);
      for (int i = 0; i < k; ++i) inter.push_back(lo + (hi - lo) * (i + 0.5) / k);
    }
  }
  const ZoneTolerances inter_tol{tol.intermediate_v_tol.value_or(tol.zones.lead), tol.zones.final};

  for (std::size_t k = 0; k < snaps.size(); ++k) {
    const SimState& s = *snaps[k];
    const double t = s.t;
    const double floor = tol.positivity_floor;

    report.checks.push_back(upper_check("prey_leading_edge", t, sup_beyond(s.u, domain, prey_lead * t),
                                        tol.zones.lead, "sup u over |x| >= " + fmt(prey_lead) + " t"));
    report.checks.push_back(upper_check("predator_leading_edge", t, sup_beyond(s.v, domain, pred_lead * t),
                                        tol.zones.lead, "sup v over |x| >= " + fmt(pred_lead) + " t"));

    const bool last = k + 1 == snaps.size();
    if (slow && !inter.empty() && (last || !tol.intermediate_last_only)) {
      int bad = 0, usable = 0;
      double min_u = std::numeric_limits<double>::infinity(), max_v = 0.0;
      for (double c : inter) {
        const double r = c * t;
        if (r > domain.length()) continue;
        ++usable;
        const double u = sample_at(s.u, domain, r);
        const double v = sample_at(s.v, domain, r);
        min_u = std::min(min_u, u);
        max_v = std::max(max_v, v);
        if (classify_zone(u, v, std::nullopt, inter_tol) != Zone::Intermediate) ++bad;
      }
      const double frac = usable ? 1.0 - static_cast<double>(bad) / usable : kNaN;
      report.checks.push_back({"intermediate_zone", t, usable && bad == 0 ? CheckStatus::Pass : CheckStatus::Fail,
                               frac, 1.0,
                               "fraction of " + std::to_string(usable) + " speeds labelled Intermediate; min u " +
                                   fmt(min_u) + ", max v " + fmt(max_v) + ", v tolerance " + fmt(inter_tol.lead)});
    }

    const double radius = extent * t;
    report.checks.push_back(lower_check("final_zone_predator", t, inf_within(s.v, domain, radius), floor,
                                        "inf v over |x| <= " + fmt(extent) + " t"));
    report.checks.push_back(lower_check("final_zone_prey_lower", t, inf_within(s.u, domain, radius), floor,
                                        "inf u over |x| <= " + fmt(extent) + " t"));
    report.checks.push_back(upper_check("final_zone_prey_upper", t, sup_within(s.u, domain, radius), 1.0 - floor,
                                        "sup u over |x| <= " + fmt(extent) + " t"));
  }

  speed_check(report, output, Species::Prey, kDefaultPreyThreshold, cs, tol.u_speed_rel, tol.window_fraction, T);
  speed_check(report, output, Species::Predator, default_predator_threshold(model), std::min(cs, css),
              tol.v_speed_rel, tol.window_fraction, T);

  // The predator may not run ahead of the prey (1e-3 level sets).
  if (const FrontTrace *tu = output.trace(Species::Prey, kOrderThreshold),
      *tv = output.trace(Species::Predator, kOrderThreshold);
      tu && tv) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < std::min(tu->samples.size(), tv->samples.size()); ++i) {
      const auto& pv = tv->samples[i].x;
      if (!pv) continue;
      const auto& pu = tu->samples[i].x;
      worst = std::max(worst, *pv - (pu ? *pu : 0.0));
    }
    const double allowed = tol.order_cells * domain.dx();
    if (std::isfinite(worst)) {
      report.checks.push_back(upper_check("predator_not_ahead", T, worst, allowed,
                                          "max over records of x_v - x_u at threshold 1e-3"));
    } else {
      report.checks.push_back(
          {"predator_not_ahead", T, CheckStatus::Pass, 0.0, allowed, "predator never reached 1e-3"});
    }
  }

  if (!slow) {
    const FrontTrace* tu = output.trace(Species::Prey, kDefaultPreyThreshold);
    const FrontTrace* tv = output.trace(Species::Predator, default_predator_threshold(model));
    double gap = kNaN;
    if (tu && tv && !tu->samples.empty() && !tv->samples.empty() && tu->samples.back().x && tv->samples.back().x) {
      gap = *tu->samples.back().x - *tv->samples.back().x;
    }
    report.checks.push_back({"front_gap", T, CheckStatus::Reported, gap, kNaN,
                             "prey minus predator front at the final time; an o(t) gap is not judged"});
  }

  report.notes.push_back("Final-zone positivity is judged against the floor " + fmt(tol.positivity_floor) +
                         "; the theoretical epsilon is existential and has no reference value.");
  if (!slow) report.notes.push_back("Fast-predator front gap is reported only.");

  if (T < tol.min_time) {
    for (auto& c : report.checks) {
      if (c.status != CheckStatus::Reported) c.status = CheckStatus::Indeterminate;
    }
    report.notes.push_back("Run time " + fmt(T) + " below " + fmt(tol.min_time) +
                           ": fronts still transient, checks not judged.");
  }
  return report;
}

}  // namespace preyspread

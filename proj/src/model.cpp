#include "preyspread/model.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "preyspread/error.hpp"

namespace preyspread {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Slack below which a sampled strict inequality is reported as indeterminate
// instead of passed or failed.
constexpr double kRoundingSlack = 1e-12;

constexpr std::size_t kMaxWitnesses = 8;

std::string point_text(double u, double v) {
  std::ostringstream os;
  os.precision(17);
  os << "(u=" << u << ", v=" << v << ")";
  return os.str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::Config, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

void require_positive(const ParamMap& p, std::string_view key) {
  auto it = p.find(key);
  if (it == p.end() || !(it->second > 0.0) || !std::isfinite(it->second)) {
    throw Error(ErrorCode::Config, "parameter '" + std::string(key) + "' must be finite and > 0");
  }
}

}  // namespace

double KineticModel::param(std::string_view key) const {
  auto it = params.find(key);
  if (it == params.end()) {
    throw Error(ErrorCode::Config, "model '" + name + "' has no parameter '" + std::string(key) + "'");
  }
  return it->second;
}

KineticModel lotka(double a, double b, double mu, double d) {
  ParamMap p{{"a", a}, {"b", b}, {"mu", mu}, {"d", d}};
  for (auto key : {"a", "b", "mu", "d"}) require_positive(p, key);

  KineticModel m;
  m.name = "lotka";
  m.kind = ModelKind::Lotka;
  m.d = d;
  m.params = std::move(p);
  m.F = [b](double u, double v) { return 1.0 - u - b * v; };
  m.G = [a, b, mu](double u, double) { return mu * b * u - a; };
  m.F_inf = [](double) { return -kInf; };
  m.G_inf = [a, b, mu](double u) { return mu * b * u - a; };
  return m;
}

KineticModel holling2(double a, double b, double m, double mu, double n, double d) {
  ParamMap p{{"a", a}, {"b", b}, {"m", m}, {"mu", mu}, {"n", n}, {"d", d}};
  for (auto key : {"a", "b", "m", "mu", "n", "d"}) require_positive(p, key);
  if (n < 1.0) throw Error(ErrorCode::Config, "holling2 requires n >= 1");

  // Pi(u) / u, finite at u = 0 for n >= 1.
  auto capture_per_prey = [b, m, n](double u) { return m * std::pow(u, n - 1.0) / (b + std::pow(u, n)); };
  auto capture = [b, m, n](double u) {
    const double un = std::pow(u, n);
    return m * un / (b + un);
  };

  KineticModel model;
  model.name = "holling2";
  model.kind = ModelKind::Holling2;
  model.d = d;
  model.params = std::move(p);
  model.F = [capture_per_prey](double u, double v) { return 1.0 - u - capture_per_prey(u) * v; };
  model.G = [capture, a, mu](double u, double) { return mu * capture(u) - a; };
  model.F_inf = [n](double u) { return (u > 0.0 || n == 1.0) ? -kInf : 1.0; };
  model.G_inf = [capture, a, mu](double u) { return mu * capture(u) - a; };
  return model;
}

ParamMap preset_defaults(std::string_view name) {
  if (name == "lotka") return {{"a", 1.5}, {"b", 1.0}, {"mu", 2.0}, {"d", 1.0}};
  if (name == "holling2") return {{"a", 1.0}, {"b", 2.0}, {"m", 1.0}, {"mu", 4.0}, {"n", 1.0}, {"d", 1.0}};
  throw Error(ErrorCode::Config, "unknown model preset '" + std::string(name) + "'");
}

KineticModel make_preset(std::string_view name, const ParamMap& params) {
  ParamMap p = preset_defaults(name);
  for (const auto& [key, value] : params) {
    if (!p.contains(key)) {
      throw Error(ErrorCode::Config,
                  "unknown parameter '" + key + "' for preset '" + std::string(name) + "'");
    }
    p[key] = value;
  }
  if (name == "lotka") return lotka(p["a"], p["b"], p["mu"], p["d"]);
  return holling2(p["a"], p["b"], p["m"], p["mu"], p["n"], p["d"]);
}

ParamMap parse_params(std::string_view text) {
  ParamMap out;
  text = trim(text);
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::Config, "expected key=value, got '" + std::string(item) + "'");
    }
    const auto key = trim(item.substr(0, eq));
    if (key.empty()) throw Error(ErrorCode::Config, "empty parameter name");
    out[std::string(key)] = parse_double(item.substr(eq + 1));
  }
  return out;
}

Rates eval_kinetics(const KineticModel& model, double u, double v) {
  if (!(u >= 0.0) || !(v >= 0.0)) {
    throw Error(ErrorCode::Domain, "kinetics evaluated at negative density " + point_text(u, v));
  }
  const Rates r{model.F(u, v), model.G(u, v)};
  if (!std::isfinite(r.F) || !std::isfinite(r.G)) {
    throw Error(ErrorCode::ModelDefinition,
                "model '" + model.name + "' is non-finite at " + point_text(u, v));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Assumption checks

std::string_view to_string(Clause clause) noexcept {
  switch (clause) {
    case Clause::PreyDecreasingInPredator: return "prey_decreasing_in_predator";
    case Clause::PreyMonostable: return "prey_monostable";
    case Clause::PreyKpp: return "prey_kpp";
    case Clause::PredatorIncreasingInPrey: return "predator_increasing_in_prey";
    case Clause::PredatorSignChange: return "predator_sign_change";
    case Clause::PredatorKpp: return "predator_kpp";
  }
  return "unknown";
}

std::string_view to_string(ClauseStatus status) noexcept {
  switch (status) {
    case ClauseStatus::Pass: return "pass";
    case ClauseStatus::Fail: return "fail";
    case ClauseStatus::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

const ClauseResult& AssumptionReport::operator[](Clause clause) const {
  auto it = std::find_if(clauses.begin(), clauses.end(),
                         [clause](const ClauseResult& r) { return r.clause == clause; });
  if (it == clauses.end()) throw Error(ErrorCode::Domain, "clause not in report");
  return *it;
}

bool AssumptionReport::all_pass() const {
  return std::all_of(clauses.begin(), clauses.end(),
                     [](const ClauseResult& r) { return r.status == ClauseStatus::Pass; });
}

bool AssumptionReport::any_fail() const {
  return std::any_of(clauses.begin(), clauses.end(),
                     [](const ClauseResult& r) { return r.status == ClauseStatus::Fail; });
}

namespace {

class ClauseRecorder {
 public:
  explicit ClauseRecorder(Clause clause) : result_{clause, ClauseStatus::Pass, {}} {}

  // `margin` is the amount by which the required inequality holds. Strict:
  // margin <= 0 fails, (0, slack] is ambiguous. Non-strict: margin < -slack
  // fails, [-slack, 0) is ambiguous.
  void observe(double margin, bool strict, const Witness& w) {
    const bool failed = strict ? !(margin > 0.0) : !(margin >= -kRoundingSlack);
    const bool ambiguous = strict ? margin <= kRoundingSlack : margin < 0.0;
    if (failed) {
      fail(w);
    } else if (ambiguous && result_.status == ClauseStatus::Pass) {
      result_.status = ClauseStatus::Indeterminate;
    }
  }

  void fail(const Witness& w) {
    result_.status = ClauseStatus::Fail;
    if (result_.witnesses.size() < kMaxWitnesses) result_.witnesses.push_back(w);
  }

  ClauseResult take() && { return std::move(result_); }

 private:
  ClauseResult result_;
};

}  // namespace

AssumptionReport check_assumptions(const KineticModel& model, const SamplingGrid& grid) {
  if (grid.u_samples < 8 || grid.v_samples < 8 || !(grid.v_max > 0.0)) {
    throw Error(ErrorCode::Domain, "sampling grid needs u_samples >= 8, v_samples >= 8, v_max > 0");
  }
  const int nu = grid.u_samples;
  const int nv = grid.v_samples;
  const Eigen::ArrayXd us = Eigen::ArrayXd::LinSpaced(nu, 0.0, 1.0);
  const Eigen::ArrayXd vs = Eigen::ArrayXd::LinSpaced(nv, 0.0, grid.v_max);

  Eigen::ArrayXXd F(nu, nv), G(nu, nv);
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      const Rates r = eval_kinetics(model, us(i), vs(j));
      F(i, j) = r.F;
      G(i, j) = r.G;
    }
  }

  auto pair = [](double u1, double v1, double f1, double u2, double v2, double f2) {
    return Witness{u1, v1, f1, u2, v2, f2};
  };
  auto point = [](double u, double v, double f) { return Witness{u, v, f, u, v, f}; };

  ClauseRecorder prey_dec(Clause::PreyDecreasingInPredator);
  ClauseRecorder prey_mono(Clause::PreyMonostable);
  ClauseRecorder prey_kpp(Clause::PreyKpp);
  ClauseRecorder pred_inc(Clause::PredatorIncreasingInPrey);
  ClauseRecorder pred_sign(Clause::PredatorSignChange);
  ClauseRecorder pred_kpp(Clause::PredatorKpp);

  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j + 1 < nv; ++j) {
      if (i > 0) {
        prey_dec.observe(F(i, j) - F(i, j + 1), true,
                         pair(us(i), vs(j), F(i, j), us(i), vs(j + 1), F(i, j + 1)));
      }
      pred_kpp.observe(G(i, j) - G(i, j + 1), false,
                       pair(us(i), vs(j), G(i, j), us(i), vs(j + 1), G(i, j + 1)));
    }
  }
  for (int j = 0; j < nv; ++j) {
    for (int i = 0; i + 1 < nu; ++i) {
      pred_inc.observe(G(i + 1, j) - G(i, j), false,
                       pair(us(i), vs(j), G(i, j), us(i + 1), vs(j), G(i + 1, j)));
    }
  }

  // Pointwise clauses use exact evaluation at the corners.
  const double F10 = F(nu - 1, 0);
  if (!(std::abs(F10) <= kRoundingSlack)) prey_mono.fail(point(1.0, 0.0, F10));
  for (int i = 0; i + 1 < nu; ++i) prey_mono.observe(F(i, 0), true, point(us(i), 0.0, F(i, 0)));

  const double F00 = F(0, 0);
  for (int i = 1; i < nu; ++i) prey_kpp.observe(F00 - F(i, 0), false, point(us(i), 0.0, F(i, 0)));

  const double G00 = G(0, 0);
  const double G10 = G(nu - 1, 0);
  pred_sign.observe(-G00, true, point(0.0, 0.0, G00));
  pred_sign.observe(G10, true, point(1.0, 0.0, G10));

  AssumptionReport report;
  report.grid = grid;
  report.clauses.push_back(std::move(prey_dec).take());
  report.clauses.push_back(std::move(prey_mono).take());
  report.clauses.push_back(std::move(prey_kpp).take());
  report.clauses.push_back(std::move(pred_inc).take());
  report.clauses.push_back(std::move(pred_sign).take());
  report.clauses.push_back(std::move(pred_kpp).take());
  return report;
}

// ---------------------------------------------------------------------------
// Weak dissipativity

double compute_m_star(const LimitFn& F_inf, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::Domain, "m* tolerance must be positive");
  if (!(F_inf(1.0) < 0.0)) {
    throw Error(ErrorCode::Domain, "F(1, +inf) must be negative to define m*");
  }

  constexpr int kGrid = 1000;
  Eigen::ArrayXd us = Eigen::ArrayXd::LinSpaced(kGrid + 1, 0.0, 1.0);
  Eigen::ArrayXd suffix_sup(kGrid + 1);
  double running = -kInf;
  for (int k = kGrid; k >= 0; --k) {
    running = std::max(running, F_inf(us(k)));
    suffix_sup(k) = running;
  }

  int first_valid = kGrid;
  while (first_valid > 0 && suffix_sup(first_valid - 1) < 0.0) --first_valid;
  if (first_valid == 0) return 0.0;

  // Invalid at lo, valid at hi; the part of [m, 1] beyond hi is covered by
  // suffix_sup, the segment [m, hi] is probed at a few interior points.
  double lo = us(first_valid - 1);
  double hi = us(first_valid);
  auto valid = [&](double m) {
    constexpr int kProbe = 8;
    for (int s = 0; s <= kProbe; ++s) {
      if (!(F_inf(m + (hi - m) * s / kProbe) < 0.0)) return false;
    }
    return true;
  };
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (valid(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::string_view to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::Satisfied: return "Satisfied";
    case Verdict::Violated: return "Violated";
    case Verdict::Indeterminate: return "Indeterminate";
  }
  return "unknown";
}

DissipativityReport check_weak_dissipativity(const KineticModel& model, double tol) {
  DissipativityReport report;
  if (!model.F_inf || !model.G_inf) {
    report.m_star = std::numeric_limits<double>::quiet_NaN();
    report.G_at_mstar_inf = std::numeric_limits<double>::quiet_NaN();
    report.G_at_zero_inf = std::numeric_limits<double>::quiet_NaN();
    report.verdict = Verdict::Indeterminate;
    return report;
  }
  report.m_star = compute_m_star(*model.F_inf, tol);
  report.G_at_mstar_inf = (*model.G_inf)(report.m_star);
  report.G_at_zero_inf = (*model.G_inf)(0.0);

  if (report.G_at_mstar_inf > tol) {
    report.verdict = Verdict::Violated;
  } else if (report.G_at_zero_inf > -kInf && report.G_at_mstar_inf < -tol) {
    report.verdict = Verdict::Satisfied;
  } else {
    report.verdict = Verdict::Indeterminate;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Equilibrium

namespace {

bool in_open_set(const Eigen::Vector2d& x) { return x(0) > 0.0 && x(0) < 1.0 && x(1) > 0.0; }

Eigen::Vector2d residual(const KineticModel& model, const Eigen::Vector2d& x) {
  const Rates r = eval_kinetics(model, x(0), x(1));
  return {r.F, r.G};
}

Equilibrium newton_equilibrium(const KineticModel& model, double tol) {
  constexpr int kMaxIter = 200;
  constexpr int kMaxHalvings = 60;
  Eigen::Vector2d x(0.5, 0.5);
  for (int iter = 0; iter < kMaxIter; ++iter) {
    const Eigen::Vector2d r = residual(model, x);
    if (r.cwiseAbs().sum() <= tol) return {x(0), x(1)};

    Eigen::Matrix2d J;
    for (int k = 0; k < 2; ++k) {
      const double h = 1e-7 * std::max(1.0, std::abs(x(k)));
      Eigen::Vector2d xp = x, xm = x;
      xp(k) += h;
      xm(k) = std::max(0.0, xm(k) - h);
      J.col(k) = (residual(model, xp) - residual(model, xm)) / (xp(k) - xm(k));
    }
    const Eigen::Vector2d delta = J.fullPivLu().solve(-r);
    if (!delta.allFinite()) break;

    double lambda = 1.0;
    int halvings = 0;
    while (!in_open_set(x + lambda * delta) && halvings < kMaxHalvings) {
      lambda *= 0.5;
      ++halvings;
    }
    if (halvings == kMaxHalvings) {
      throw Error(ErrorCode::NoInteriorEquilibrium, "Newton iterate left 0<u<1, v>0");
    }
    x += lambda * delta;
  }
  throw Error(ErrorCode::NoInteriorEquilibrium, "Newton did not converge in 200 iterations");
}

}  // namespace

Equilibrium equilibrium(const KineticModel& model, double tol) {
  std::optional<Equilibrium> closed;
  if (model.kind == ModelKind::Lotka) {
    const double a = model.param("a"), b = model.param("b"), mu = model.param("mu");
    if (!(mu * b > a)) throw Error(ErrorCode::NoInteriorEquilibrium, "lotka needs mu*b > a");
    closed = Equilibrium{a / (mu * b), (mu * b - a) / (mu * b * b)};
  } else if (model.kind == ModelKind::Holling2 && model.param("n") == 1.0) {
    const double a = model.param("a"), b = model.param("b"), m = model.param("m"),
                 mu = model.param("mu");
    // mu * m u / (b + u) = a
    if (!(mu * m > a)) throw Error(ErrorCode::NoInteriorEquilibrium, "holling2 needs mu*m > a");
    const double u = a * b / (mu * m - a);
    if (!(u < 1.0)) throw Error(ErrorCode::NoInteriorEquilibrium, "holling2 needs mu*m/(b+1) > a");
    closed = Equilibrium{u, (1.0 - u) * (b + u) / m};
  }

  if (closed) {
    const Rates r = eval_kinetics(model, closed->u, closed->v);
    if (std::abs(r.F) + std::abs(r.G) > tol) {
      throw Error(ErrorCode::NoInteriorEquilibrium, "closed-form equilibrium residual exceeds tolerance");
    }
    return *closed;
  }
  return newton_equilibrium(model, tol);
}

}  // namespace preyspread

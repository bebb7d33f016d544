#include "preyspread/speeds.hpp"

#include <cmath>

namespace preyspread {

std::string_view to_string(Regime regime) noexcept {
  return regime == Regime::SlowPredator ? "SlowPredator" : "FastPredator";
}

SpeedReport speed_report(const KineticModel& model) {
  const double f00 = eval_kinetics(model, 0.0, 0.0).F;
  const double g10 = eval_kinetics(model, 1.0, 0.0).G;
  if (!(f00 > 0.0)) throw Error(ErrorCode::ModelDefinition, "F(0,0) must be positive for c*");
  if (!(g10 > 0.0)) throw Error(ErrorCode::ModelDefinition, "G(1,0) must be positive for c**");

  SpeedReport report;
  report.c_star = 2.0 * std::sqrt(model.d * f00);
  report.c_star_star = 2.0 * std::sqrt(g10);
  report.regime = classify_regime(report.c_star, report.c_star_star);
  report.kpp_flag = check_assumptions(model)[Clause::PreyKpp].status == ClauseStatus::Pass;
  report.c_star_label = report.kpp_flag ? "spreading speed" : "linear speed lower bound";
  return report;
}

double supersolution_v_bound(const KineticModel& model, double A, double x, double t) {
  const double g10 = model.G(1.0, 0.0);
  if (!(g10 > 0.0)) throw Error(ErrorCode::ModelDefinition, "G(1,0) must be positive");
  const double rate = std::sqrt(g10);
  return A * std::exp(-rate * (x - 2.0 * rate * t));
}

}  // namespace preyspread

#pragma once

#include <Eigen/Core>

#include <cmath>
#include <string>
#include <string_view>

#include "preyspread/error.hpp"
#include "preyspread/model.hpp"

namespace preyspread {

enum class Regime { SlowPredator, FastPredator };

std::string_view to_string(Regime regime) noexcept;

struct SpeedReport {
  double c_star = 0.0;       // 2 sqrt(d F(0,0))
  double c_star_star = 0.0;  // 2 sqrt(G(1,0))
  Regime regime = Regime::SlowPredator;
  bool kpp_flag = false;     // F(u,0) <= F(0,0) verified on the sampling grid
  std::string c_star_label;  // "spreading speed" or "linear speed lower bound"
};

/// The tie c** == c* is FastPredator.
SpeedReport speed_report(const KineticModel& model);

inline Regime classify_regime(double c_star, double c_star_star) noexcept {
  return c_star_star < c_star ? Regime::SlowPredator : Regime::FastPredator;
}

/// Exponential super-solution for the predator,
///   A exp(-sqrt(G(1,0)) (x - c** t)),
/// travelling at c** along the radial axis.
double supersolution_v_bound(const KineticModel& model, double A, double x, double t);

/// Array form; `x` holds the (nonnegative) radial coordinate of each sample.
template <typename Derived>
Eigen::Array<typename Derived::Scalar, Eigen::Dynamic, 1> supersolution_v_bound(
    const KineticModel& model, typename Derived::Scalar A, const Eigen::ArrayBase<Derived>& x,
    typename Derived::Scalar t) {
  using Scalar = typename Derived::Scalar;
  const Scalar g10 = model.G(1.0, 0.0);
  if (!(g10 > 0)) throw Error(ErrorCode::ModelDefinition, "G(1,0) must be positive");
  const Scalar rate = std::sqrt(g10);
  const Scalar speed = 2 * rate;
  return A * (-rate * (x - speed * t)).exp();
}

}  // namespace preyspread

#pragma once

#include <cmath>

#include "preyspread/error.hpp"

namespace preyspread {

namespace detail {

// 15-point Kronrod extension of 7-point Gauss on [-1, 1].
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename Fn>
void gauss_kronrod(Fn& f, double a, double b, double& kronrod, double& gauss) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(mid);
  kronrod = kKronrodWeights[7] * fc;
  gauss = kGaussWeights[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double sum = f(mid - dx) + f(mid + dx);
    kronrod += kKronrodWeights[i] * sum;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
}

template <typename Fn>
double adaptive(Fn& f, double a, double b, double tol, int depth) {
  double k, g;
  gauss_kronrod(f, a, b, k, g);
  if (std::abs(k - g) <= tol) return k;
  if (depth == 0) throw Error(ErrorCode::Inconclusive, "quadrature did not reach the requested tolerance");
  const double mid = 0.5 * (a + b);
  return adaptive(f, a, mid, 0.5 * tol, depth - 1) + adaptive(f, mid, b, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b] to absolute
/// tolerance `tol`. Reversed limits give the negated integral.
template <typename Fn>
double integrate(Fn f, double a, double b, double tol = 1e-10, int max_depth = 40) {
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, tol, max_depth);
  return detail::adaptive(f, a, b, tol, max_depth);
}

}  // namespace preyspread

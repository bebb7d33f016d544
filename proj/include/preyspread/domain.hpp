#pragma once

#include <Eigen/Core>

#include <string_view>

namespace preyspread {

template <typename Scalar>
using Field = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

using FieldXd = Field<double>;

enum class Geometry { Line1D, Radial };

std::string_view to_string(Geometry geometry) noexcept;

/// Uniform grid. Line1D covers [-L, L]; Radial(N) covers r in [0, L].
class Domain {
 public:
  static Domain line(double half_width, double dx);
  static Domain radial(int dimension, double radius, double dx);

  Geometry geometry() const noexcept { return geometry_; }
  int dimension() const noexcept { return dimension_; }
  double length() const noexcept { return length_; }
  double dx() const noexcept { return dx_; }
  Eigen::Index n_points() const noexcept { return n_points_; }

  /// Effective dimension entering the explicit stability bound.
  int effective_dimension() const noexcept { return dimension_ < 1 ? 1 : dimension_; }

  double x(Eigen::Index i) const noexcept { return origin() + static_cast<double>(i) * dx_; }
  double origin() const noexcept { return geometry_ == Geometry::Line1D ? -length_ : 0.0; }
  FieldXd coordinates() const;
  /// |x| for Line1D, r for Radial.
  FieldXd radius() const;

 private:
  Domain(Geometry geometry, int dimension, double length, double dx);

  Geometry geometry_;
  int dimension_;
  double length_;
  double dx_;
  Eigen::Index n_points_;
};

/// Discrete Laplacian with homogeneous Neumann conditions.
///
/// Line1D: second-order central differences, ghost reflection at both ends.
/// Radial(N): u_rr + (N-1)/r u_r centrally; 2N (u_1 - u_0)/dx^2 at r = 0;
/// ghost reflection at r = L.
template <typename Derived>
Field<typename Derived::Scalar> laplacian(const Eigen::ArrayBase<Derived>& field, const Domain& domain) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = domain.n_points();
  eigen_assert(field.size() == n && n >= 2);
  const Scalar inv_h2 = Scalar(1) / (domain.dx() * domain.dx());

  Field<Scalar> out(n);
  out.segment(1, n - 2) =
      (field.segment(2, n - 2) - 2 * field.segment(1, n - 2) + field.segment(0, n - 2)) * inv_h2;

  if (domain.geometry() == Geometry::Radial) {
    const int N = domain.dimension();
    if (N > 1) {
      const Scalar h = domain.dx();
      const Field<Scalar> r = Field<Scalar>::LinSpaced(n - 2, h, h * static_cast<Scalar>(n - 2));
      out.segment(1, n - 2) += Scalar(N - 1) / r *
                               (field.segment(2, n - 2) - field.segment(0, n - 2)) / (2 * h);
    }
    out(0) = 2 * N * (field(1) - field(0)) * inv_h2;
  } else {
    out(0) = 2 * (field(1) - field(0)) * inv_h2;
  }
  out(n - 1) = 2 * (field(n - 2) - field(n - 1)) * inv_h2;
  return out;
}

}  // namespace preyspread

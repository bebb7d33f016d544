#include "preyspread/domain.hpp"

#include <cmath>

#include "preyspread/error.hpp"

namespace preyspread {

std::string_view to_string(Geometry geometry) noexcept {
  return geometry == Geometry::Line1D ? "line" : "radial";
}

Domain::Domain(Geometry geometry, int dimension, double length, double dx)
    : geometry_(geometry), dimension_(dimension), length_(length), dx_(dx), n_points_(0) {
  if (!(length > 0.0) || !(dx > 0.0) || !std::isfinite(length) || !std::isfinite(dx)) {
    throw Error(ErrorCode::Config, "domain length and dx must be positive");
  }
  const double cells = length / dx;
  const double rounded = std::round(cells);
  if (std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells) || rounded < 2.0) {
    throw Error(ErrorCode::Config, "domain length / dx must be an integer >= 2");
  }
  const auto per_side = static_cast<Eigen::Index>(rounded);
  n_points_ = geometry == Geometry::Line1D ? 2 * per_side + 1 : per_side + 1;
}

Domain Domain::line(double half_width, double dx) { return Domain(Geometry::Line1D, 1, half_width, dx); }

Domain Domain::radial(int dimension, double radius, double dx) {
  if (dimension < 1) throw Error(ErrorCode::Config, "radial dimension must be >= 1");
  return Domain(Geometry::Radial, dimension, radius, dx);
}

FieldXd Domain::coordinates() const {
  FieldXd x(n_points_);
  for (Eigen::Index i = 0; i < n_points_; ++i) x(i) = this->x(i);
  return x;
}

FieldXd Domain::radius() const { return coordinates().abs(); }

}  // namespace preyspread

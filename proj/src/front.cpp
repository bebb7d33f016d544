#include "preyspread/front.hpp"

#include <algorithm>
#include <cmath>

#include "preyspread/error.hpp"

namespace preyspread {

std::string_view to_string(Species species) noexcept {
  return species == Species::Prey ? "u" : "v";
}

std::size_t FrontTrace::present_count() const {
  return static_cast<std::size_t>(
      std::count_if(samples.begin(), samples.end(), [](const FrontSample& s) { return s.x.has_value(); }));
}

namespace {

// Scans from `outer` towards `inner` (step +-1) and returns the crossing
// distance from the grid origin of the scan, or nullopt.
std::optional<double> outward_crossing(const FieldXd& field, const Domain& domain, Eigen::Index inner,
                                       Eigen::Index outer, double theta) {
  const Eigen::Index step = outer > inner ? 1 : -1;
  for (Eigen::Index i = outer;; i -= step) {
    if (field(i) >= theta) {
      double r = std::abs(domain.x(i));
      if (i != outer) {
        const double f_in = field(i);
        const double f_out = field(i + step);
        r += domain.dx() * (f_in - theta) / (f_in - f_out);
      }
      return r;
    }
    if (i == inner) return std::nullopt;
  }
}

}  // namespace

std::optional<double> front_position(const FieldXd& field, const Domain& domain, double theta) {
  if (field.size() != domain.n_points()) throw Error(ErrorCode::Domain, "field size does not match domain");
  if (!(theta > 0.0)) throw Error(ErrorCode::Domain, "front threshold must be positive");
  const Eigen::Index n = domain.n_points();
  if (domain.geometry() == Geometry::Radial) return outward_crossing(field, domain, 0, n - 1, theta);

  const Eigen::Index mid = (n - 1) / 2;
  auto right = outward_crossing(field, domain, mid, n - 1, theta);
  auto left = outward_crossing(field, domain, mid, 0, theta);
  if (!right) return left;
  if (!left) return right;
  return std::max(*left, *right);
}

}  // namespace preyspread

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "preyspread/domain.hpp"

namespace preyspread {

enum class Species { Prey, Predator };

std::string_view to_string(Species species) noexcept;

struct FrontSample {
  double t;
  std::optional<double> x;  // absent while the field stays below the threshold
};

struct FrontTrace {
  Species species = Species::Prey;
  double threshold = 0.1;
  std::vector<FrontSample> samples;

  std::size_t present_count() const;
};

/// Outermost |x| where field >= theta, refined by linear interpolation towards
/// the first grid point below theta. Absent if the field never reaches theta.
std::optional<double> front_position(const FieldXd& field, const Domain& domain, double theta);

}  // namespace preyspread

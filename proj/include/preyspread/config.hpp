#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

#include "preyspread/pde.hpp"

namespace preyspread {

/// Schema:
///   model  {name, params{...}, d, allow_unverified?}
///   domain {geometry: "line"|"radial", N, length, dx}
///   init   {u_amp, v_amp, u_radius, v_radius, ramp_width?}
///   time   {T, dt_safety?, snapshots[...]}
///   fronts {thresholds_u[...], thresholds_v[...]}   (optional)
///   analysis {c_grid[...]}                           (optional)
///   output {dir}
SimConfig parse_sim_config(const nlohmann::json& j);
SimConfig load_sim_config(const std::filesystem::path& path);
nlohmann::json to_json(const SimConfig& config);

nlohmann::json load_json(const std::filesystem::path& path);

}  // namespace preyspread

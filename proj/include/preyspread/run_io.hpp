#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <vector>

#include "preyspread/pde.hpp"

namespace preyspread {

inline constexpr const char* kVersion = "0.1.0";

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(const std::string& bytes);

/// "snap_t200.csv", "snap_t12.5.csv".
std::string snapshot_filename(double t);

struct RunManifest {
  std::string config_hash;
  std::string version = kVersion;
  double wall_clock_seconds = 0.0;
  std::vector<std::string> files;
  std::string status = "ok";  // "ok" or an error name
  std::string message;
};

nlohmann::json to_json(const RunManifest& manifest);

/// Writes snapshots, fronts.csv, config.json, diagnostics.json and
/// manifest.json into `dir`. A run that stopped at the boundary guard also
/// gets its final state as a snapshot file.
RunManifest write_run(const std::filesystem::path& dir, const SimOutput& output, double wall_clock_seconds);

/// Manifest for a run that raised before producing output.
RunManifest write_failed_run(const std::filesystem::path& dir, const SimConfig& config, const std::string& status,
                             const std::string& message, double wall_clock_seconds);

/// Rebuilds a SimOutput from a run directory written by write_run.
SimOutput load_run(const std::filesystem::path& dir);

}  // namespace preyspread

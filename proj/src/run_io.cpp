#include "preyspread/run_io.hpp"

#include <cstdint>
#include <fstream>

#include "preyspread/config.hpp"
#include "preyspread/csv.hpp"
#include "preyspread/error.hpp"

namespace preyspread {

using nlohmann::json;
namespace fs = std::filesystem;

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[i] = digits[h & 0xf];
  return out;
}

std::string snapshot_filename(double t) { return "snap_t" + format_number(t) + ".csv"; }

json to_json(const RunManifest& m) {
  json j = {{"config_hash", m.config_hash},
            {"version", m.version},
            {"wall_clock_seconds", m.wall_clock_seconds},
            {"files", m.files},
            {"status", m.status}};
  if (!m.message.empty()) j["message"] = m.message;
  return j;
}

namespace {

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create '" + dir.string() + "': " + ec.message());
}

json clamp_json(const ClampStats& c) {
  return {{"l1_total", c.l1_total}, {"events", c.events}, {"min_u", c.min_u}, {"max_u", c.max_u},
          {"min_v", c.min_v}};
}

void write_snapshot(const fs::path& path, const SimState& s, const Domain& domain) {
  CsvTable table{{"x", "u", "v"}, {}};
  table.rows.reserve(static_cast<std::size_t>(domain.n_points()));
  for (Eigen::Index i = 0; i < domain.n_points(); ++i) {
    table.rows.push_back({format_number(domain.x(i)), format_number(s.u(i)), format_number(s.v(i))});
  }
  write_csv(path, table);
}

}  // namespace

RunManifest write_run(const fs::path& dir, const SimOutput& output, double wall_clock_seconds) {
  make_dir(dir);
  RunManifest m;
  const std::string config_text = to_json(output.config).dump(2);
  m.config_hash = fnv1a_hex(config_text);
  m.wall_clock_seconds = wall_clock_seconds;

  {
    std::ofstream out(dir / "config.json");
    if (!out) throw Error(ErrorCode::Io, "cannot write config.json");
    out << config_text << '\n';
  }
  m.files.push_back("config.json");

  std::vector<const SimState*> snaps;
  for (const auto& s : output.snapshots) snaps.push_back(&s);
  if (output.aborted && (snaps.empty() || snaps.back()->t < output.final_state.t)) {
    snaps.push_back(&output.final_state);
  }
  json snap_index = json::array();
  for (const SimState* s : snaps) {
    const std::string name = snapshot_filename(s->t);
    write_snapshot(dir / name, *s, output.config.domain);
    m.files.push_back(name);
    snap_index.push_back({{"t", s->t}, {"file", name}, {"v_sup_running", s->v_sup_running},
                          {"clamp", clamp_json(s->clamp)}});
  }

  CsvTable fronts{{"t", "species", "threshold", "position"}, {}};
  for (const auto& tr : output.fronts) {
    for (const auto& s : tr.samples) {
      fronts.rows.push_back({format_number(s.t), std::string(to_string(tr.species)), format_number(tr.threshold),
                             s.x ? format_number(*s.x) : std::string()});
    }
  }
  write_csv(dir / "fronts.csv", fronts);
  m.files.push_back("fronts.csv");

  json diag = {{"t_final", output.final_state.t},
               {"dt_max", output.dt_max},
               {"steps", output.steps},
               {"v_sup_running", output.final_state.v_sup_running},
               {"clamp", clamp_json(output.final_state.clamp)},
               {"snapshots", snap_index}};
  if (output.aborted) {
    diag["aborted"] = {{"t", output.aborted->t},
                       {"species", std::string(to_string(output.aborted->species))},
                       {"position", output.aborted->position}};
    m.status = std::string(to_string(ErrorCode::FrontReachedBoundary));
    m.message = "front reached the boundary guard; data valid up to t = " + format_number(output.aborted->t);
  }
  write_json(dir / "diagnostics.json", diag);
  m.files.push_back("diagnostics.json");

  m.files.push_back("manifest.json");
  write_json(dir / "manifest.json", to_json(m));
  return m;
}

RunManifest write_failed_run(const fs::path& dir, const SimConfig& config, const std::string& status,
                             const std::string& message, double wall_clock_seconds) {
  make_dir(dir);
  RunManifest m;
  const std::string config_text = to_json(config).dump(2);
  m.config_hash = fnv1a_hex(config_text);
  m.wall_clock_seconds = wall_clock_seconds;
  m.status = status;
  m.message = message;
  {
    std::ofstream out(dir / "config.json");
    if (!out) throw Error(ErrorCode::Io, "cannot write config.json");
    out << config_text << '\n';
  }
  m.files = {"config.json", "manifest.json"};
  write_json(dir / "manifest.json", to_json(m));
  return m;
}

namespace {

ClampStats clamp_from(const json& j) {
  ClampStats c;
  auto num = [&](const char* k, double fallback) {
    return j.contains(k) && j.at(k).is_number() ? j.at(k).get<double>() : fallback;
  };
  c.l1_total = num("l1_total", 0.0);
  c.events = j.value("events", 0L);
  c.min_u = num("min_u", c.min_u);
  c.max_u = num("max_u", c.max_u);
  c.min_v = num("min_v", c.min_v);
  return c;
}

SimState read_snapshot(const fs::path& path, const Domain& domain) {
  const CsvTable table = read_csv(path);
  const std::size_t iu = table.column("u"), iv = table.column("v");
  if (static_cast<Eigen::Index>(table.rows.size()) != domain.n_points()) {
    throw Error(ErrorCode::Io, "snapshot '" + path.string() + "' does not match the domain");
  }
  SimState s;
  s.u.resize(domain.n_points());
  s.v.resize(domain.n_points());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    s.u(static_cast<Eigen::Index>(i)) = parse_number(table.rows[i][iu]).value_or(0.0);
    s.v(static_cast<Eigen::Index>(i)) = parse_number(table.rows[i][iv]).value_or(0.0);
  }
  return s;
}

}  // namespace

SimOutput load_run(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::Config, "run directory '" + dir.string() + "' not found");
  SimOutput out;
  out.config = load_sim_config(dir / "config.json");
  const json diag = load_json(dir / "diagnostics.json");
  const Domain& domain = out.config.domain;

  for (const auto& entry : diag.at("snapshots")) {
    SimState s = read_snapshot(dir / entry.at("file").get<std::string>(), domain);
    s.t = entry.at("t").get<double>();
    s.v_sup_running = entry.value("v_sup_running", 0.0);
    if (entry.contains("clamp")) s.clamp = clamp_from(entry.at("clamp"));
    out.snapshots.push_back(std::move(s));
  }
  if (out.snapshots.empty()) throw Error(ErrorCode::Io, "run has no snapshots");
  out.final_state = out.snapshots.back();
  out.final_state.v_sup_running = diag.value("v_sup_running", out.final_state.v_sup_running);
  if (diag.contains("clamp")) out.final_state.clamp = clamp_from(diag.at("clamp"));
  out.dt_max = diag.value("dt_max", 0.0);
  out.steps = diag.value("steps", 0L);
  if (diag.contains("aborted")) {
    const json& a = diag.at("aborted");
    out.aborted = BoundaryHit{a.at("t").get<double>(),
                              a.at("species").get<std::string>() == "u" ? Species::Prey : Species::Predator,
                              a.at("position").get<double>()};
  }

  const CsvTable fronts = read_csv(dir / "fronts.csv");
  const std::size_t it = fronts.column("t"), is = fronts.column("species"), ith = fronts.column("threshold"),
                    ip = fronts.column("position");
  for (const auto& row : fronts.rows) {
    const Species sp = row[is] == "u" ? Species::Prey : Species::Predator;
    const double th = *parse_number(row[ith]);
    FrontTrace* trace = nullptr;
    for (auto& tr : out.fronts) {
      if (tr.species == sp && tr.threshold == th) trace = &tr;
    }
    if (!trace) {
      out.fronts.push_back({sp, th, {}});
      trace = &out.fronts.back();
    }
    trace->samples.push_back({*parse_number(row[it]), parse_number(row[ip])});
  }
  return out;
}

}  // namespace preyspread

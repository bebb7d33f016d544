#include "preyspread/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include "preyspread/config.hpp"
#include "preyspread/csv.hpp"
#include "preyspread/fronttrack.hpp"
#include "preyspread/lyapunov.hpp"
#include "preyspread/model.hpp"
#include "preyspread/pde.hpp"
#include "preyspread/run_io.hpp"
#include "preyspread/speeds.hpp"
#include "preyspread/wavespeed.hpp"

namespace preyspread {

using nlohmann::json;
namespace fs = std::filesystem;

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Config:
    case ErrorCode::Domain: return kExitUsage;
    default: return kExitRuntime;
  }
}

namespace {

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string format_cell(double x) { return std::isfinite(x) ? format_number(x) : std::string(); }

KineticModel model_from(const std::string& name, const std::string& params) {
  return make_preset(name, parse_params(params));
}

json speeds_json(const SpeedReport& r) {
  return {{"c_star", r.c_star},
          {"c_star_star", r.c_star_star},
          {"regime", std::string(to_string(r.regime))},
          {"kpp_flag", r.kpp_flag},
          {"c_star_label", r.c_star_label}};
}

json check_json(const Check& c) {
  return {{"name", c.name},
          {"t", c.t},
          {"status", std::string(to_string(c.status))},
          {"pass", c.status == CheckStatus::Pass || c.status == CheckStatus::Reported},
          {"measured", number_or_null(c.measured)},
          {"threshold", number_or_null(c.threshold)},
          {"detail", c.detail}};
}

json speed_estimate_json(const std::optional<SpeedEstimate>& e) {
  if (!e) return nullptr;
  return {{"slope", e->slope},           {"intercept", e->intercept},          {"t0", e->t0},
          {"t1", e->t1},                 {"residual_rms", e->residual_rms},    {"tail_quotient", e->tail_quotient},
          {"preferred", e->preferred()}, {"samples", e->samples}};
}

json report_json(const VerificationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(check_json(c));
  return {{"regime", std::string(to_string(r.regime))},
          {"c_star", r.c_star},
          {"c_star_star", r.c_star_star},
          {"all_pass", r.all_pass()},
          {"u_speed", speed_estimate_json(r.u_speed)},
          {"v_speed", speed_estimate_json(r.v_speed)},
          {"checks", checks},
          {"notes", r.notes}};
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------

int cmd_speeds(const std::string& model_name, const std::string& params, std::ostream& out) {
  out << speeds_json(speed_report(model_from(model_name, params))).dump(2) << '\n';
  return kExitOk;
}

int cmd_check(const std::string& model_name, const std::string& params, std::ostream& out) {
  const KineticModel model = model_from(model_name, params);
  const AssumptionReport report = check_assumptions(model);
  const DissipativityReport diss = check_weak_dissipativity(model);

  json clauses = json::array();
  for (const auto& c : report.clauses) {
    json witnesses = json::array();
    for (const auto& w : c.witnesses) {
      witnesses.push_back({{"u1", w.u1}, {"v1", w.v1}, {"value1", w.value1},
                           {"u2", w.u2}, {"v2", w.v2}, {"value2", w.value2}});
    }
    clauses.push_back({{"clause", std::string(to_string(c.clause))},
                       {"status", std::string(to_string(c.status))},
                       {"witnesses", witnesses}});
  }
  const bool failed = report.any_fail() || diss.verdict == Verdict::Violated;
  json j = {{"model", model.name},
            {"clauses", clauses},
            {"dissipativity",
             {{"m_star", number_or_null(diss.m_star)},
              {"G_at_mstar_inf", number_or_null(diss.G_at_mstar_inf)},
              {"G_at_zero_inf", number_or_null(diss.G_at_zero_inf)},
              {"verdict", std::string(to_string(diss.verdict))}}},
            {"all_pass", !failed}};
  out << j.dump(2) << '\n';
  return failed ? kExitCheckFailed : kExitOk;
}

struct WaveArgs {
  std::string f = "fisher";
  double d = 1.0;
  std::optional<double> c;
  std::optional<double> alpha;
  double tol = 1e-4;
  std::optional<double> z_max;
  std::optional<double> dz;
  int stride = 10;
};

int cmd_wave(const WaveArgs& a, std::ostream& out) {
  const GrowthFn f = growth_preset(a.f);
  if (!a.c) {
    const WaveSpeedResult r = find_minimal_wave_speed(f, a.d, a.tol);
    json j = {{"c_min", r.c_min},
              {"p", r.p},
              {"alpha", r.alpha},
              {"alpha_retry_used", r.alpha_retry_used},
              {"shots", r.shots},
              {"linear_speed", 2.0 * std::sqrt(a.d * f(0.0))}};
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  const double p = first_nonpositive(f);
  const double alpha = a.alpha.value_or((1.0 - 1e-3) * p);
  const double z_max = a.z_max.value_or(200.0 * std::sqrt(a.d));
  const double dz = a.dz.value_or(5e-3 * std::sqrt(a.d));
  ShootSettings settings;
  settings.profile_stride = a.stride;
  const ShootOutcome o = shoot_profile(f, a.d, *a.c, alpha, z_max, dz, settings);
  out << "# kind=" << to_string(o.kind);
  if (o.b) out << " b=" << format_number(*o.b);
  out << " c=" << format_number(*a.c) << " alpha=" << format_number(alpha) << '\n';
  write_csv_row(out, {"z", "q", "qprime"});
  for (const auto& s : o.profile) write_csv_row(out, {format_number(s.z), format_number(s.q), format_number(s.dq)});
  return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir, std::ostream& out,
                 std::ostream& err) {
  SimConfig config = load_sim_config(config_path);
  if (!out_dir.empty()) config.output_dir = out_dir;
  const auto start = std::chrono::steady_clock::now();
  SimOutput output;
  try {
    output = run_simulation(config);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Config && e.code() != ErrorCode::Domain) {
      write_failed_run(config.output_dir, config, std::string(to_string(e.code())), e.what(),
                       seconds_since(start));
    }
    throw;
  }
  const RunManifest m = write_run(config.output_dir, output, seconds_since(start));
  json j = {{"dir", config.output_dir},
            {"status", m.status},
            {"t_final", output.final_state.t},
            {"steps", output.steps},
            {"config_hash", m.config_hash}};
  out << j.dump(2) << '\n';
  if (output.aborted) {
    err << "preyspread: " << m.message << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

struct OdeArgs {
  std::string model = "lotka";
  std::string params;
  double u0 = 0.5;
  double v0 = 0.5;
  double T = 100.0;
  double dt = 1e-3;
  int stride = 10;
};

int cmd_ode(const OdeArgs& a, std::ostream& out, std::ostream& err) {
  const KineticModel model = model_from(a.model, a.params);
  std::optional<LyapunovFn> fn;
  try {
    fn = lyapunov_for(model);
  } catch (const Error& e) {
    err << "preyspread: " << e.what() << "; phi and J left empty\n";
  }
  const OdeTrajectory traj = ode_integrate(model, a.u0, a.v0, a.T, a.dt, a.stride);
  if (traj.boundary_exit) err << "preyspread: warning: trajectory left O; evaluation continued clamped\n";

  write_csv_row(out, {"t", "u", "v", "phi", "J"});
  for (const auto& p : traj.points) {
    std::string phi, J;
    const bool inside = p.u > 0.0 && p.u < 1.0 && p.v > 0.0;
    if (fn && inside) {
      phi = format_number(lyapunov_value(*fn, p.u, p.v));
      J = format_number(dissipation(model, *fn, p.u, p.v));
    }
    write_csv_row(out, {format_number(p.t), format_number(p.u), format_number(p.v), phi, J});
  }
  return kExitOk;
}

struct AnalyzeResult {
  VerificationReport report;
  SpeedReport speeds;
};

// Zone tables for every snapshot with t > 0, then the checklist.
AnalyzeResult analyze_run(const fs::path& dir, const SimOutput& output, const VerificationTolerances& tol) {
  const KineticModel model = build_model(output.config);
  const Domain& domain = output.config.domain;
  AnalyzeResult result;
  try {
    result.speeds = speed_report(model);
  } catch (const Error& e) {
    throw Error(ErrorCode::RegimeUndetermined, e.what());
  }

  bool have_eq = true;
  try {
    equilibrium(model);
  } catch (const Error&) {
    have_eq = false;
  }

  for (const auto& snap : output.snapshots) {
    if (!(snap.t > 0.0)) continue;
    std::vector<double> grid;
    for (double c : output.config.c_grid.empty() ? default_c_grid(result.speeds.c_star, domain.length(), snap.t)
                                                  : output.config.c_grid) {
      if (c >= 0.0 && c <= domain.length() / snap.t) grid.push_back(c);
    }
    const ZoneProfile profile = zone_profile(snap, domain, model, grid, tol.zones, Interpolation::Linear, have_eq);
    CsvTable table{{"c", "u", "v", "label", "final_zone_error"}, {}};
    for (const auto& s : profile.samples) {
      std::string fze;
      if (have_eq && s.c < domain.length() / snap.t) {
        fze = format_number(final_zone_error(snap, domain, model, s.c).value);
      }
      table.rows.push_back(
          {format_number(s.c), format_number(s.u), format_number(s.v), std::string(to_string(s.label)), fze});
    }
    write_csv(dir / ("zones_t" + format_number(snap.t) + ".csv"), table);
  }

  result.report = verify_spreading(output, model, tol);
  json j = report_json(result.report);
  if (model.d != 1.0) j["notes"].push_back("d != 1: final_zone_error has no reference convergence result");
  std::ofstream f(dir / "verification_report.json");
  if (!f) throw Error(ErrorCode::Io, "cannot write verification_report.json");
  f << j.dump(2) << '\n';
  return result;
}

int cmd_analyze(const std::string& run_dir, double margin, std::ostream& out) {
  const SimOutput output = load_run(run_dir);
  VerificationTolerances tol;
  tol.margin_fraction = margin;
  const AnalyzeResult r = analyze_run(run_dir, output, tol);
  json summary = {{"regime", std::string(to_string(r.report.regime))},
                  {"all_pass", r.report.all_pass()},
                  {"failed", json::array()}};
  for (const auto& c : r.report.checks) {
    if (c.status == CheckStatus::Fail) summary["failed"].push_back(c.name + "@t=" + format_number(c.t));
  }
  out << summary.dump(2) << '\n';
  return r.report.any_failed() ? kExitCheckFailed : kExitOk;
}

// ---------------------------------------------------------------------------

struct SweepJob {
  ParamMap overrides;
  SimConfig config;
};

struct SweepRow {
  std::string status = "ok";
  double c_star = std::nan("");
  double c_star_star = std::nan("");
  std::string regime;
  double u_speed = std::nan("");
  double v_speed = std::nan("");
  bool all_pass = false;
};

SweepRow run_job(const SweepJob& job) {
  SweepRow row;
  const auto start = std::chrono::steady_clock::now();
  try {
    const KineticModel model = build_model(job.config);
    const SpeedReport speeds = speed_report(model);
    row.c_star = speeds.c_star;
    row.c_star_star = speeds.c_star_star;
    row.regime = std::string(to_string(speeds.regime));
    const SimOutput output = run_simulation(job.config);
    write_run(job.config.output_dir, output, seconds_since(start));
    const AnalyzeResult r = analyze_run(job.config.output_dir, output, {});
    if (r.report.u_speed) row.u_speed = r.report.u_speed->preferred();
    if (r.report.v_speed) row.v_speed = r.report.v_speed->preferred();
    row.all_pass = r.report.all_pass();
  } catch (const Error& e) {
    row.status = std::string(to_string(e.code()));
  }
  return row;
}

unsigned sweep_threads(std::optional<unsigned> requested, std::size_t jobs) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PREYSPREAD_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0) n = std::min(n, static_cast<unsigned>(cap));
  }
  if (requested && *requested > 0) n = std::min(n, *requested);
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, jobs)));
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir, std::optional<unsigned> threads,
              std::ostream& out) {
  const json j = load_json(config_path);
  const SimConfig base = parse_sim_config(j);
  if (!j.contains("sweep") || !j.at("sweep").is_object() || j.at("sweep").empty()) {
    throw Error(ErrorCode::Config, "sweep config needs a non-empty 'sweep' object of parameter lists");
  }
  std::vector<std::pair<std::string, std::vector<double>>> axes;
  for (const auto& [key, values] : j.at("sweep").items()) {
    if (!values.is_array() || values.empty()) throw Error(ErrorCode::Config, "sweep." + key + " must be a list");
    std::vector<double> v;
    for (const auto& x : values) {
      if (!x.is_number()) throw Error(ErrorCode::Config, "sweep." + key + " must hold numbers");
      v.push_back(x.get<double>());
    }
    axes.emplace_back(key, std::move(v));
  }

  const fs::path root = out_dir.empty() ? fs::path(base.output_dir) : fs::path(out_dir);
  fs::create_directories(root);

  std::vector<SweepJob> jobs;
  std::vector<std::size_t> idx(axes.size(), 0);
  for (;;) {
    SweepJob job{{}, base};
    for (std::size_t a = 0; a < axes.size(); ++a) {
      job.overrides[axes[a].first] = axes[a].second[idx[a]];
      job.config.params[axes[a].first] = axes[a].second[idx[a]];
    }
    job.config.output_dir = (root / ("job_" + std::to_string(jobs.size()))).string();
    validate(job.config);
    jobs.push_back(std::move(job));
    std::size_t a = axes.size();
    while (a > 0 && ++idx[a - 1] == axes[a - 1].second.size()) idx[--a] = 0;
    if (a == 0) break;
  }

  std::vector<SweepRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) rows[k] = run_job(jobs[k]);
  };
  std::vector<std::thread> pool;
  const unsigned n_threads = sweep_threads(threads, jobs.size());
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  CsvTable table;
  for (const auto& axis : axes) table.header.push_back(axis.first);
  for (const char* h : {"c_star", "c_star_star", "regime", "measured_u_speed", "measured_v_speed",
                        "all_checks_pass", "status"}) {
    table.header.emplace_back(h);
  }
  bool any_error = false;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    std::vector<std::string> cells;
    for (const auto& axis : axes) cells.push_back(format_number(jobs[k].overrides.at(axis.first)));
    const SweepRow& r = rows[k];
    cells.insert(cells.end(), {format_cell(r.c_star), format_cell(r.c_star_star), r.regime, format_cell(r.u_speed),
                               format_cell(r.v_speed), r.all_pass ? "true" : "false", r.status});
    table.rows.push_back(std::move(cells));
    any_error |= r.status != "ok";
  }
  write_csv(root / "sweep_results.csv", table);
  out << json({{"jobs", jobs.size()}, {"threads", n_threads}, {"results", (root / "sweep_results.csv").string()}})
             .dump(2)
      << '\n';
  return any_error ? kExitRuntime : kExitOk;
}

void report_error(std::ostream& err, bool as_json, const std::string& kind, const std::string& message,
                  int code) {
  if (as_json) {
    err << json({{"error", kind}, {"message", message}, {"exit_code", code}}).dump() << '\n';
  } else {
    err << "preyspread: " << message << '\n';
  }
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prey-predator reaction-diffusion spreading toolkit", "preyspread"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable errors on stderr");

  std::string model_name = "lotka", params;
  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--model", model_name, "Preset: lotka or holling2");
    sub->add_option("--params", params, "Comma-separated k=v list, e.g. a=1.5,b=1,mu=2,d=1");
  };
  CLI::App* speeds = app.add_subcommand("speeds", "Print c*, c** and the regime");
  add_model(speeds);
  CLI::App* check = app.add_subcommand("check", "Check standing assumptions and weak dissipativity");
  add_model(check);

  WaveArgs wave_args;
  CLI::App* wave = app.add_subcommand("wave", "Minimal travelling-wave speed or a single shooting profile");
  wave->add_option("--f", wave_args.f, "fisher, kpp:r or pushed:a");
  wave->add_option("--d", wave_args.d, "Diffusivity");
  wave->add_option("--c", wave_args.c, "Shoot at this speed instead of searching");
  wave->add_option("--alpha", wave_args.alpha, "Starting density for --c");
  wave->add_option("--tol", wave_args.tol, "Bisection tolerance on c");
  wave->add_option("--zmax", wave_args.z_max, "Shooting horizon");
  wave->add_option("--dz", wave_args.dz, "RK4 step");
  wave->add_option("--stride", wave_args.stride, "Keep every n-th profile point");

  std::string config_path, out_dir;
  CLI::App* simulate = app.add_subcommand("simulate", "Run a simulation from a JSON config");
  simulate->add_option("--config", config_path, "Config file")->required();
  simulate->add_option("--out", out_dir, "Output directory (overrides output.dir)");

  OdeArgs ode_args;
  CLI::App* ode = app.add_subcommand("ode", "Integrate the kinetic ODE; CSV t,u,v,phi,J on stdout");
  ode->add_option("--model", ode_args.model, "Preset: lotka or holling2");
  ode->add_option("--params", ode_args.params, "Comma-separated k=v list");
  ode->add_option("--u0", ode_args.u0, "Initial prey density");
  ode->add_option("--v0", ode_args.v0, "Initial predator density");
  ode->add_option("--T", ode_args.T, "Final time");
  ode->add_option("--dt", ode_args.dt, "RK4 step (<= 1e-2)");
  ode->add_option("--stride", ode_args.stride, "Record every n-th step (>= 10)");

  std::string run_dir;
  double margin = VerificationTolerances{}.margin_fraction;
  CLI::App* analyze = app.add_subcommand("analyze", "Zone profiles and spreading checklist for a run");
  analyze->add_option("--run", run_dir, "Run directory")->required();
  analyze->add_option("--margin", margin, "Speed margin as a fraction of c*");

  std::optional<unsigned> threads;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter grid of simulate+analyze jobs");
  sweep->add_option("--config", config_path, "Config with a 'sweep' object")->required();
  sweep->add_option("--out", out_dir, "Output root (overrides output.dir)");
  sweep->add_option("--threads", threads, "Worker threads (also capped by PREYSPREAD_THREADS)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, as_json, "UsageError", e.what(), kExitUsage);
    return kExitUsage;
  }

  try {
    if (speeds->parsed()) return cmd_speeds(model_name, params, out);
    if (check->parsed()) return cmd_check(model_name, params, out);
    if (wave->parsed()) return cmd_wave(wave_args, out);
    if (simulate->parsed()) return cmd_simulate(config_path, out_dir, out, err);
    if (ode->parsed()) return cmd_ode(ode_args, out, err);
    if (analyze->parsed()) return cmd_analyze(run_dir, margin, out);
    if (sweep->parsed()) return cmd_sweep(config_path, out_dir, threads, out);
  } catch (const Error& e) {
    const int code = exit_code_for(e.code());
    report_error(err, as_json, std::string(to_string(e.code())), e.what(), code);
    return code;
  } catch (const std::exception& e) {
    report_error(err, as_json, "InternalError", e.what(), kExitRuntime);
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace preyspread

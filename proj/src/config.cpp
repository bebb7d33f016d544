#include "preyspread/config.hpp"

#include <fstream>

#include "preyspread/error.hpp"

namespace preyspread {

using nlohmann::json;

namespace {

const json& section(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_object()) {
    throw Error(ErrorCode::Config, std::string("missing object '") + key + "'");
  }
  return j.at(key);
}

double number(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::Config, std::string("missing key '") + key + "'");
  if (!j.at(key).is_number()) throw Error(ErrorCode::Config, std::string("'") + key + "' must be a number");
  return j.at(key).get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

std::vector<double> numbers(const json& j, const char* key) {
  std::vector<double> out;
  if (!j.contains(key)) return out;
  if (!j.at(key).is_array()) throw Error(ErrorCode::Config, std::string("'") + key + "' must be an array");
  for (const auto& x : j.at(key)) {
    if (!x.is_number()) throw Error(ErrorCode::Config, std::string("'") + key + "' must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

SimConfig parse_sim_config(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Config, "config must be a JSON object");
  SimConfig c;

  const json& model = section(j, "model");
  if (!model.contains("name") || !model.at("name").is_string()) {
    throw Error(ErrorCode::Config, "model.name must be a string");
  }
  c.model_name = model.at("name").get<std::string>();
  if (model.contains("params")) {
    if (!model.at("params").is_object()) throw Error(ErrorCode::Config, "model.params must be an object");
    for (const auto& [key, value] : model.at("params").items()) {
      if (!value.is_number()) throw Error(ErrorCode::Config, "model.params." + key + " must be a number");
      c.params[key] = value.get<double>();
    }
  }
  if (model.contains("d")) c.params["d"] = number(model, "d");
  c.allow_unverified_model = model.value("allow_unverified", false);

  const json& domain = section(j, "domain");
  const std::string geometry = domain.value("geometry", std::string("line"));
  const double length = number(domain, "length");
  const double dx = number(domain, "dx");
  if (geometry == "line" || geometry == "Line1D") {
    c.domain = Domain::line(length, dx);
  } else if (geometry == "radial" || geometry == "Radial") {
    c.domain = Domain::radial(static_cast<int>(number_or(domain, "N", 1.0)), length, dx);
  } else {
    throw Error(ErrorCode::Config, "domain.geometry must be 'line' or 'radial'");
  }

  const json& init = section(j, "init");
  c.init.u_amp = number_or(init, "u_amp", c.init.u_amp);
  c.init.v_amp = number_or(init, "v_amp", c.init.v_amp);
  c.init.u_radius = number_or(init, "u_radius", c.init.u_radius);
  c.init.v_radius = number_or(init, "v_radius", c.init.v_radius);
  if (init.contains("ramp_width")) c.init.ramp_width = number(init, "ramp_width");

  const json& time = section(j, "time");
  c.time.T = number(time, "T");
  c.time.dt_safety = number_or(time, "dt_safety", c.time.dt_safety);
  c.time.snapshots = numbers(time, "snapshots");

  if (j.contains("fronts")) {
    const json& fronts = section(j, "fronts");
    c.fronts.thresholds_u = numbers(fronts, "thresholds_u");
    c.fronts.thresholds_v = numbers(fronts, "thresholds_v");
  }
  if (j.contains("analysis")) c.c_grid = numbers(section(j, "analysis"), "c_grid");

  if (j.contains("output")) c.output_dir = section(j, "output").value("dir", c.output_dir);
  return c;
}

json to_json(const SimConfig& c) {
  json params = json::object();
  for (const auto& [k, v] : c.params) {
    if (k != "d") params[k] = v;
  }
  json model = {{"name", c.model_name}, {"params", params}};
  if (auto it = c.params.find("d"); it != c.params.end()) model["d"] = it->second;
  if (c.allow_unverified_model) model["allow_unverified"] = true;

  json domain = {{"geometry", std::string(to_string(c.domain.geometry()))},
                 {"N", c.domain.dimension()},
                 {"length", c.domain.length()},
                 {"dx", c.domain.dx()}};
  json init = {{"u_amp", c.init.u_amp},
               {"v_amp", c.init.v_amp},
               {"u_radius", c.init.u_radius},
               {"v_radius", c.init.v_radius}};
  if (c.init.ramp_width) init["ramp_width"] = *c.init.ramp_width;

  json out = {{"model", model},
              {"domain", domain},
              {"init", init},
              {"time", {{"T", c.time.T}, {"dt_safety", c.time.dt_safety}, {"snapshots", c.time.snapshots}}},
              {"fronts", {{"thresholds_u", c.fronts.thresholds_u}, {"thresholds_v", c.fronts.thresholds_v}}},
              {"output", {{"dir", c.output_dir}}}};
  if (!c.c_grid.empty()) out["analysis"] = {{"c_grid", c.c_grid}};
  return out;
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Config, "cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Config, "invalid JSON in '" + path.string() + "': " + e.what());
  }
}

SimConfig load_sim_config(const std::filesystem::path& path) { return parse_sim_config(load_json(path)); }

}  // namespace preyspread

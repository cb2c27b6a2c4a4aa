#include "gamow/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gamow/emit.hpp"

namespace gamow {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& path) {
  if (!j.is_object()) throw ConfigError("'" + path + "' must be an object");
  for (const auto& item : j.items())
    if (!allowed.count(item.key()))
      throw ConfigError("unknown key '" + path + item.key() + "'");
}

double get_number(const json& j, const char* key, double fallback,
                  const std::string& path) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError("'" + path + key + "' must be a number");
  return v.get<double>();
}

int get_int(const json& j, const char* key, int fallback,
            const std::string& path) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer())
    throw ConfigError("'" + path + key + "' must be an integer");
  return v.get<int>();
}

bool get_bool(const json& j, const char* key, bool fallback,
              const std::string& path) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_boolean()) throw ConfigError("'" + path + key + "' must be a boolean");
  return v.get<bool>();
}

std::string get_string(const json& j, const char* key, std::string fallback,
                       const std::string& path) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_string()) throw ConfigError("'" + path + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

ShellModel RunConfig::model() const { return make_model(lambda, radius_R); }

Grid1D RunConfig::oracle_grid() const {
  return Grid1D{oracle.L, oracle.h, oracle.dt, oracle.cap.width,
                oracle.cap.strength};
}

RunConfig RunConfig::from_json_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("JSON parse failed: ") + e.what());
  }
  RunConfig cfg;
  check_keys(root, {"model", "initial_state", "truncation_N", "time_grid",
                    "probes", "oracle", "output", "tail_completion"},
             "");
  if (root.contains("model")) {
    const json& m = root.at("model");
    check_keys(m, {"lambda", "R"}, "model.");
    cfg.lambda = get_number(m, "lambda", cfg.lambda, "model.");
    cfg.radius_R = get_number(m, "R", cfg.radius_R, "model.");
  }
  if (root.contains("initial_state")) {
    const json& s = root.at("initial_state");
    check_keys(s, {"mode"}, "initial_state.");
    cfg.initial_mode = get_int(s, "mode", cfg.initial_mode, "initial_state.");
  }
  cfg.truncation_N = get_int(root, "truncation_N", cfg.truncation_N, "");
  if (root.contains("time_grid")) {
    const json& g = root.at("time_grid");
    check_keys(g, {"t_min", "t_max", "points_per_decade"}, "time_grid.");
    cfg.time_grid.t_min = get_number(g, "t_min", cfg.time_grid.t_min, "time_grid.");
    cfg.time_grid.t_max = get_number(g, "t_max", cfg.time_grid.t_max, "time_grid.");
    cfg.time_grid.points_per_decade =
        get_int(g, "points_per_decade", cfg.time_grid.points_per_decade,
                "time_grid.");
  }
  if (root.contains("probes")) {
    const json& p = root.at("probes");
    if (!p.is_array() || p.empty())
      throw ConfigError("'probes' must be a non-empty array");
    cfg.probes.clear();
    for (const json& pair : p) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
          !pair[1].is_number())
        throw ConfigError("each probe must be a [r, rp] number pair");
      cfg.probes.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
  }
  if (root.contains("oracle")) {
    const json& o = root.at("oracle");
    check_keys(o, {"L", "h", "dt", "cap"}, "oracle.");
    cfg.oracle.L = get_number(o, "L", cfg.oracle.L, "oracle.");
    cfg.oracle.h = get_number(o, "h", cfg.oracle.h, "oracle.");
    cfg.oracle.dt = get_number(o, "dt", cfg.oracle.dt, "oracle.");
    if (o.contains("cap")) {
      const json& c = o.at("cap");
      check_keys(c, {"width", "strength", "reflect_threshold"}, "oracle.cap.");
      cfg.oracle.cap.width =
          get_number(c, "width", cfg.oracle.cap.width, "oracle.cap.");
      cfg.oracle.cap.strength =
          get_number(c, "strength", cfg.oracle.cap.strength, "oracle.cap.");
      cfg.oracle.cap.reflect_threshold =
          get_number(c, "reflect_threshold", cfg.oracle.cap.reflect_threshold,
                     "oracle.cap.");
    }
  }
  if (root.contains("output")) {
    const json& o = root.at("output");
    check_keys(o, {"format", "path", "precision"}, "output.");
    cfg.output.format = get_string(o, "format", cfg.output.format, "output.");
    cfg.output.path = get_string(o, "path", cfg.output.path, "output.");
    cfg.output.precision =
        get_int(o, "precision", cfg.output.precision, "output.");
  }
  cfg.tail_completion =
      get_bool(root, "tail_completion", cfg.tail_completion, "");
  cfg.validate();
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

void RunConfig::validate() const {
  if (!(lambda > 0.0)) throw ConfigError("model.lambda must be > 0");
  if (!(radius_R > 0.0)) throw ConfigError("model.R must be > 0");
  if (initial_mode < 1) throw ConfigError("initial_state.mode must be >= 1");
  if (truncation_N < 1 || truncation_N > 500)
    throw ConfigError("truncation_N must lie in [1, 500]");
  if (!(time_grid.t_min > 0.0) || !(time_grid.t_max > time_grid.t_min))
    throw ConfigError("time_grid must satisfy 0 < t_min < t_max");
  if (time_grid.points_per_decade < 1)
    throw ConfigError("time_grid.points_per_decade must be >= 1");
  if (probes.empty()) throw ConfigError("at least one probe pair required");
  for (const auto& [r, rp] : probes)
    if (!(r > 0.0) || !(r < radius_R) || !(rp > 0.0) || !(rp < radius_R))
      throw ConfigError("probe points must lie strictly inside (0, R)");
  if (output.format != "csv" && output.format != "json")
    throw ConfigError("output.format must be 'csv' or 'json'");
  if (output.precision < 1 || output.precision > 17)
    throw ConfigError("output.precision must lie in [1, 17]");
  if (!(oracle.cap.reflect_threshold > 0.0))
    throw ConfigError("oracle.cap.reflect_threshold must be > 0");
  try {
    validate_grid(model(), oracle_grid());
  } catch (const Error& e) {
    throw ConfigError(std::string("oracle grid: ") + e.what());
  }
}

std::vector<std::string> RunConfig::echo_lines() const {
  std::vector<std::string> lines;
  lines.push_back("initial_state.mode = " + fmt_int(initial_mode));
  lines.push_back("model.R = " + fmt17(radius_R));
  lines.push_back("model.lambda = " + fmt17(lambda));
  lines.push_back("oracle.L = " + fmt17(oracle.L));
  lines.push_back("oracle.cap.reflect_threshold = " +
                  fmt17(oracle.cap.reflect_threshold));
  lines.push_back("oracle.cap.strength = " + fmt17(oracle.cap.strength));
  lines.push_back("oracle.cap.width = " + fmt17(oracle.cap.width));
  lines.push_back("oracle.dt = " + fmt17(oracle.dt));
  lines.push_back("oracle.h = " + fmt17(oracle.h));
  lines.push_back("output.format = " + output.format);
  lines.push_back("output.path = " + output.path);
  lines.push_back("output.precision = " + fmt_int(output.precision));
  std::string probe_line = "probes =";
  for (const auto& [r, rp] : probes)
    probe_line += " (" + fmt17(r) + ", " + fmt17(rp) + ")";
  lines.push_back(probe_line);
  lines.push_back(std::string("tail_completion = ") +
                  (tail_completion ? "true" : "false"));
  lines.push_back("time_grid.points_per_decade = " +
                  fmt_int(time_grid.points_per_decade));
  lines.push_back("time_grid.t_max = " + fmt17(time_grid.t_max));
  lines.push_back("time_grid.t_min = " + fmt17(time_grid.t_min));
  lines.push_back("truncation_N = " + fmt_int(truncation_N));
  std::sort(lines.begin(), lines.end());
  return lines;
}

}  // namespace gamow

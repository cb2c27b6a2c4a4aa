#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gamow/cn_oracle.hpp"
#include "gamow/shell_model.hpp"

namespace gamow {

struct TimeGridConfig {
  double t_min = 1e-2;
  double t_max = 1e4;
  int points_per_decade = 16;
};

struct CapConfig {
  double width = 8.0;
  double strength = 150.0;
  double reflect_threshold = 0.05;
};

struct OracleConfig {
  double L = 20.0;
  double h = 0.005;
  double dt = 2e-4;
  CapConfig cap;
};

struct OutputConfig {
  std::string format = "csv";  // "csv" or "json"
  std::string path;            // empty = stdout
  int precision = 17;          // significant digits
};

struct RunConfig {
  double lambda = 6.0;
  double radius_R = 1.0;
  int initial_mode = 1;
  int truncation_N = 50;
  TimeGridConfig time_grid;
  std::vector<std::pair<double, double>> probes = {
      {0.3, 0.7}, {0.25, 0.55}, {0.45, 0.85}};
  OracleConfig oracle;
  OutputConfig output;
  // Analysis paths subtract the certified-null leading power from each time
  // factor; plain evolution operators are unaffected. See README.
  bool tail_completion = true;

  ShellModel model() const;
  Grid1D oracle_grid() const;

  // Rejects unknown keys at every level, wrong JSON types, and out-of-range
  // values. Throws ConfigError with the offending key path.
  static RunConfig from_json_text(const std::string& text);
  static RunConfig from_file(const std::string& path);

  void validate() const;

  // Deterministic "key = value" lines (sorted), used for the '#' header echo
  // in CSV output and the _config array in JSON output.
  std::vector<std::string> echo_lines() const;
};

}  // namespace gamow

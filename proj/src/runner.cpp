#include "gamow/runner.hpp"

#include <cmath>

#include "gamow/acceptance.hpp"
#include "gamow/emit.hpp"
#include "gamow/propagation.hpp"

namespace gamow {

namespace {

struct Pipeline {
  ShellModel model;
  InitialState psi0;
  ResonantFamily family;
  CoefficientSet coeffs;
  OverlapMatrix overlaps;
  std::vector<double> grid;
};

Pipeline build_pipeline(const RunConfig& cfg) {
  const ShellModel model = cfg.model();
  ResonantFamily family = ResonantFamily::build(model, cfg.truncation_N);
  const InitialState psi0 = initial_state_box_mode(model, cfg.initial_mode);
  CoefficientSet coeffs = build_coefficients(family, psi0);
  OverlapMatrix overlaps = build_overlap_matrix(family);
  return Pipeline{model,
                  psi0,
                  std::move(family),
                  std::move(coeffs),
                  std::move(overlaps),
                  make_log_grid(cfg.time_grid.t_min, cfg.time_grid.t_max,
                                cfg.time_grid.points_per_decade)};
}

// All artifacts open with the config echo so a file is self-describing.
void echo_into_csv(CsvBuilder& csv, const RunConfig& cfg) {
  for (const std::string& line : cfg.echo_lines()) csv.add_comment(line);
}

void echo_into_json(JsonWriter& w, const RunConfig& cfg) {
  // CSV uses '#' comment lines; JSON has no comments, so the echo becomes a
  // plain string array under a reserved key.
  w.key("_config").begin_array();
  for (const std::string& line : cfg.echo_lines()) w.value_string(line);
  w.end_array();
}

std::string rows_as_json(const RunConfig& cfg,
                         const std::vector<std::string>& columns,
                         const std::vector<std::vector<std::string>>& rows,
                         const std::vector<bool>& numeric) {
  JsonWriter w;
  w.begin_object();
  echo_into_json(w, cfg);
  w.key("rows").begin_array();
  for (const auto& row : rows) {
    w.begin_object();
    for (size_t c = 0; c < columns.size(); ++c) {
      w.key(columns[c]);
      // Cells are already fmt17/fmt_int rendered; NaN needs quoting in JSON.
      if (numeric[c] && row[c] != "nan" && row[c] != "inf" && row[c] != "-inf")
        w.value_raw(row[c]);
      else if (numeric[c])
        w.value_string(row[c]);
      else
        w.value_raw(row[c]);
    }
    w.end_object();
  }
  w.end_array();
  w.end_object();
  std::string out = w.str();
  out += "\n";
  return out;
}

std::string render_table(const RunConfig& cfg,
                         const std::vector<std::string>& columns,
                         const std::vector<std::vector<std::string>>& rows) {
  if (cfg.output.format == "json") {
    return rows_as_json(cfg, columns, rows,
                        std::vector<bool>(columns.size(), true));
  }
  CsvBuilder csv(columns);
  echo_into_csv(csv, cfg);
  for (const auto& row : rows) csv.add_row(row);
  return csv.str();
}

std::vector<int> diagnostic_truncations(int N) {
  std::vector<int> out;
  for (int n = 5; n <= N; n += 5) out.push_back(n);
  if (out.empty() || out.back() != N) out.push_back(N);
  return out;
}

double round_to_step(double t, double dt) { return std::round(t / dt) * dt; }

void json_number_prec(JsonWriter& w, double v, int prec) {
  const std::string s = fmt_g(v, prec);
  if (s == "nan" || s == "inf" || s == "-inf")
    w.value_string(s);
  else
    w.value_raw(s);
}

std::string tailfit_one(const ResonantFamily& family,
                        const ProbabilitySeries& series,
                        const std::vector<double>& grid,
                        const std::string& name, int prec) {
  double decay_scale = 1.0;  // probability series
  const std::vector<double>* y = nullptr;
  if (name == "survival") {
    y = &series.S;
  } else if (name == "nonescape") {
    y = &series.P;
  } else if (name == "remainder") {
    decay_scale = 0.5;  // amplitude series
    y = &series.remainder;
  } else {
    throw ConfigError("unknown series '" + name +
                      "' (want survival, nonescape, remainder, all)");
  }
  const TailWindow win = auto_window(family, grid, decay_scale);
  std::vector<double> tw, yw;
  for (int i : win.indices) {
    tw.push_back(grid[i]);
    yw.push_back((*y)[i]);
  }
  const SlopeEstimate est = tail_slope(tw, yw);
  JsonWriter w;
  w.begin_object();
  w.key("window").begin_object();
  w.key("t_lo");
  json_number_prec(w, est.t_lo, prec);
  w.key("t_hi");
  json_number_prec(w, est.t_hi, prec);
  w.key("samples").value_int(est.samples);
  w.end_object();
  w.key("slope");
  json_number_prec(w, est.slope, prec);
  w.key("stderr");
  json_number_prec(w, est.stderr_slope, prec);
  w.end_object();
  return w.str();
}

}  // namespace

std::string run_poles(const RunConfig& cfg) {
  const ShellModel model = cfg.model();
  const std::vector<Pole> poles = find_poles(model, cfg.truncation_N);
  const int prec = cfg.output.precision;
  std::vector<std::vector<std::string>> rows;
  for (const Pole& p : poles)
    rows.push_back({fmt_int(p.index_n), fmt_g(p.k.real(), prec),
                    fmt_g(p.k.imag(), prec), fmt_g(p.residual, prec),
                    fmt_int(p.iterations)});
  return render_table(cfg, {"n", "re_k", "im_k", "residual", "iterations"},
                      rows);
}

std::string run_sumrules(const RunConfig& cfg) {
  const Pipeline pipe = build_pipeline(cfg);
  const std::vector<double> grid = diagnostic_grid(pipe.model);
  const auto [probe_r, probe_rp] = cfg.probes.front();
  const int prec = cfg.output.precision;
  std::vector<std::vector<std::string>> rows;
  for (int N : diagnostic_truncations(cfg.truncation_N)) {
    const DiagnosticReport rep =
        build_diagnostic(pipe.family, pipe.coeffs, pipe.overlaps, probe_r,
                         probe_rp, grid, N);
    rows.push_back({fmt_int(rep.N),
                    fmt_g(std::abs(rep.sum_rule_value), prec),
                    fmt_g(rep.f_sup_norm, prec),
                    fmt_g(std::abs(rep.delta_value), prec),
                    fmt_g(std::abs(rep.delta_value) / rep.term_mass, prec)});
  }
  return render_table(
      cfg, {"N", "|sum_rule|", "f_sup", "|delta|", "delta_over_mass"}, rows);
}

std::string run_probabilities(const RunConfig& cfg) {
  const Pipeline pipe = build_pipeline(cfg);
  const auto [probe_r, probe_rp] = cfg.probes.front();
  const ProbabilitySeries series = build_probability_series(
      pipe.family, pipe.coeffs, pipe.overlaps, pipe.grid, probe_r, probe_rp,
      cfg.tail_completion);
  const int prec = cfg.output.precision;
  std::vector<std::vector<std::string>> rows;
  for (size_t i = 0; i < series.t.size(); ++i)
    rows.push_back({fmt_g(series.t[i], prec), fmt_g(series.S[i], prec),
                    fmt_g(series.P[i], prec),
                    fmt_g(series.remainder[i], prec),
                    fmt_g(series.local_slope_S[i], prec),
                    fmt_g(series.local_slope_P[i], prec)});
  return render_table(
      cfg, {"t", "S", "P", "remainder", "local_slope_S", "local_slope_P"},
      rows);
}

std::string run_tailfit(const RunConfig& cfg, const std::string& series_name) {
  const Pipeline pipe = build_pipeline(cfg);
  const auto [probe_r, probe_rp] = cfg.probes.front();
  const ProbabilitySeries series = build_probability_series(
      pipe.family, pipe.coeffs, pipe.overlaps, pipe.grid, probe_r, probe_rp,
      cfg.tail_completion);
  std::vector<std::string> names;
  if (series_name == "all")
    names = {"survival", "nonescape", "remainder"};
  else
    names = {series_name};
  JsonWriter w;
  w.begin_object();
  echo_into_json(w, cfg);
  w.key("series").begin_object();
  for (const std::string& name : names)
    w.key(name).value_raw(tailfit_one(pipe.family, series, pipe.grid, name,
                                      cfg.output.precision));
  w.end_object();
  w.end_object();
  return w.str() + "\n";
}

std::string run_oracle_compare(const RunConfig& cfg) {
  const Pipeline pipe = build_pipeline(cfg);
  const Grid1D grid = cfg.oracle_grid();
  const double tau = 1.0 / slowest_rate(pipe.family);
  // 20 samples spanning (0, 5 tau], each snapped to an exact step multiple
  // (propagate_cn rejects anything else).
  const double base = round_to_step(0.25 * tau, grid.dt);
  std::vector<double> times;
  for (int j = 1; j <= 20; ++j) times.push_back(j * base);
  const std::vector<OracleSample> samples =
      oracle_probabilities(pipe.model, pipe.psi0, grid, times,
                           cfg.oracle.cap.reflect_threshold);
  // The expansion side uses plain time factors throughout: this artifact
  // certifies the expansion against the grid dynamics, not the tail analysis.
  const int prec = cfg.output.precision;
  std::vector<std::vector<std::string>> rows;
  for (const OracleSample& s : samples) {
    const double p_exp =
        nonescape_P(pipe.family, pipe.coeffs, pipe.overlaps, s.time, false);
    const double s_exp =
        std::norm(survival_S_series(pipe.family, pipe.coeffs, s.time, false));
    rows.push_back({fmt_g(s.time, prec), fmt_g(s.P, prec), fmt_g(p_exp, prec),
                    fmt_g(std::abs(s.P - p_exp) / s.P, prec),
                    fmt_g(std::norm(s.S), prec), fmt_g(s_exp, prec)});
  }
  return render_table(
      cfg, {"t", "P_cn", "P_expansion", "rel_diff", "S_cn", "S_expansion"},
      rows);
}

std::map<std::string, std::string> generate_artifacts(const RunConfig& cfg) {
  RunConfig canon = cfg;
  canon.output.format = "csv";  // fixed artifact shapes
  std::map<std::string, std::string> out;
  out["poles.csv"] = run_poles(canon);
  out["sumrules.csv"] = run_sumrules(canon);
  out["probabilities.csv"] = run_probabilities(canon);
  out["tailfit.json"] = run_tailfit(canon, "all");
  out["oracle_compare.csv"] = run_oracle_compare(canon);
  return out;
}

std::map<std::string, std::string> run_report(const RunConfig& cfg,
                                              bool* all_pass) {
  const std::vector<CriterionResult> results = run_all_criteria(cfg);
  bool pass = true;
  for (const CriterionResult& r : results) pass = pass && r.pass;
  if (all_pass) *all_pass = pass;

  std::map<std::string, std::string> artifacts = generate_artifacts(cfg);
  JsonWriter w;
  w.begin_object();
  RunConfig canon = cfg;
  canon.output.format = "csv";
  echo_into_json(w, canon);
  w.key("criteria").begin_array();
  for (const CriterionResult& r : results) {
    w.begin_object();
    w.key("id").value_int(r.id);
    w.key("name").value_string(r.name);
    w.key("pass").value_bool(r.pass);
    w.key("detail").value_string(r.detail);
    w.end_object();
  }
  w.end_array();
  w.key("all_pass").value_bool(pass);
  w.end_object();
  artifacts["report.json"] = w.str() + "\n";
  return artifacts;
}

}  // namespace gamow

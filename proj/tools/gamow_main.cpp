#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gamow/config.hpp"
#include "gamow/errors.hpp"
#include "gamow/runner.hpp"

namespace {

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw gamow::Error("cannot write '" + path + "'");
  out << content;
}

void emit(const gamow::RunConfig& cfg, const std::string& content) {
  if (cfg.output.path.empty())
    std::fputs(content.c_str(), stdout);
  else
    write_text(cfg.output.path, content);
}

std::pair<double, double> parse_probe(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw gamow::ConfigError("probe wants 'r,rp', got '" + text + "'");
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw gamow::ConfigError("probe wants 'r,rp', got '" + text + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Resonant-expansion laboratory for s-wave delta-shell decay:\n"
      "pole family, Gamow diagnostics, survival/nonescape tails, and a\n"
      "Crank-Nicolson grid oracle. Outputs are deterministic.\n"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global options after the subcommand name

  std::string config_path;
  app.add_option("--config", config_path, "JSON run configuration file");

  double lambda = 0, radius = 0, t_min = 0, t_max = 0;
  double oracle_L = 0, oracle_h = 0, oracle_dt = 0;
  double cap_width = 0, cap_strength = 0, reflect_threshold = 0;
  int mode = 0, truncation = 0, ppd = 0, precision = 0;
  std::vector<std::string> probe_args;
  std::string format, out_path;
  bool tail_completion = true;

  auto* o_lambda = app.add_option("--lambda", lambda, "shell strength");
  auto* o_radius = app.add_option("--radius", radius, "shell radius R");
  auto* o_mode = app.add_option("--mode", mode, "initial box-mode index m");
  auto* o_trunc =
      app.add_option("--truncation", truncation, "family half-size N");
  auto* o_tmin = app.add_option("--t-min", t_min, "grid start time");
  auto* o_tmax = app.add_option("--t-max", t_max, "grid end time");
  auto* o_ppd =
      app.add_option("--points-per-decade", ppd, "log-grid density");
  auto* o_probe = app.add_option("--probe", probe_args,
                                 "probe pair 'r,rp' (repeatable; replaces "
                                 "the configured list)");
  auto* o_L = app.add_option("--oracle-L", oracle_L, "grid box length");
  auto* o_h = app.add_option("--oracle-h", oracle_h, "grid spacing");
  auto* o_dt = app.add_option("--oracle-dt", oracle_dt, "grid time step");
  auto* o_cw = app.add_option("--cap-width", cap_width, "absorbing layer width");
  auto* o_cs =
      app.add_option("--cap-strength", cap_strength, "absorbing layer strength");
  auto* o_rt = app.add_option("--reflect-threshold", reflect_threshold,
                              "trailing-edge amplitude limit");
  auto* o_fmt = app.add_option("--format", format, "output format: csv or json");
  auto* o_out = app.add_option("--out", out_path, "output file (default stdout)");
  auto* o_prec =
      app.add_option("--precision", precision, "significant digits, 1..17");
  auto* o_tc = app.add_flag("--tail-completion,!--no-tail-completion",
                            tail_completion,
                            "subtract the certified-null leading power from "
                            "analysis-path time factors (default on)");

  auto* cmd_poles =
      app.add_subcommand("poles", "solve the resonance family, emit the table");
  auto* cmd_sumrules = app.add_subcommand(
      "sumrules", "truncation diagnostics: sum rule, f profile, delta");
  auto* cmd_prob = app.add_subcommand(
      "probabilities", "S(t), P(t) and the remainder series on the log grid");
  std::string series = "all";
  auto* cmd_tailfit = app.add_subcommand(
      "tailfit", "fit power-law tails on the auto-selected late window");
  cmd_tailfit->add_option(
      "--series", series, "survival, nonescape, remainder, or all (default)");
  auto* cmd_oracle = app.add_subcommand(
      "oracle-compare", "expansion vs Crank-Nicolson grid propagation");
  std::string outdir = ".";
  auto* cmd_report = app.add_subcommand(
      "report", "full artifact set plus acceptance verdicts (exit 1 on any "
                "failed criterion)");
  cmd_report->add_option("--outdir", outdir, "artifact directory (default .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    gamow::RunConfig cfg;
    if (!config_path.empty()) cfg = gamow::RunConfig::from_file(config_path);
    if (o_lambda->count()) cfg.lambda = lambda;
    if (o_radius->count()) cfg.radius_R = radius;
    if (o_mode->count()) cfg.initial_mode = mode;
    if (o_trunc->count()) cfg.truncation_N = truncation;
    if (o_tmin->count()) cfg.time_grid.t_min = t_min;
    if (o_tmax->count()) cfg.time_grid.t_max = t_max;
    if (o_ppd->count()) cfg.time_grid.points_per_decade = ppd;
    if (o_probe->count()) {
      cfg.probes.clear();
      for (const std::string& p : probe_args)
        cfg.probes.push_back(parse_probe(p));
    }
    if (o_L->count()) cfg.oracle.L = oracle_L;
    if (o_h->count()) cfg.oracle.h = oracle_h;
    if (o_dt->count()) cfg.oracle.dt = oracle_dt;
    if (o_cw->count()) cfg.oracle.cap.width = cap_width;
    if (o_cs->count()) cfg.oracle.cap.strength = cap_strength;
    if (o_rt->count()) cfg.oracle.cap.reflect_threshold = reflect_threshold;
    if (o_fmt->count()) cfg.output.format = format;
    if (o_out->count()) cfg.output.path = out_path;
    if (o_prec->count()) cfg.output.precision = precision;
    if (o_tc->count()) cfg.tail_completion = tail_completion;
    cfg.validate();

    if (*cmd_poles) {
      emit(cfg, gamow::run_poles(cfg));
    } else if (*cmd_sumrules) {
      emit(cfg, gamow::run_sumrules(cfg));
    } else if (*cmd_prob) {
      emit(cfg, gamow::run_probabilities(cfg));
    } else if (*cmd_tailfit) {
      emit(cfg, gamow::run_tailfit(cfg, series));
    } else if (*cmd_oracle) {
      emit(cfg, gamow::run_oracle_compare(cfg));
    } else if (*cmd_report) {
      bool all_pass = false;
      const auto artifacts = gamow::run_report(cfg, &all_pass);
      std::filesystem::create_directories(outdir);
      for (const auto& [name, content] : artifacts)
        write_text(outdir + "/" + name, content);
      std::fputs(artifacts.at("report.json").c_str(), stdout);
      return all_pass ? 0 : 1;
    }
    return 0;
  } catch (const gamow::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }
}

#include "gamow/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "gamow/emit.hpp"
#include "gamow/propagation.hpp"
#include "gamow/quadrature.hpp"
#include "gamow/runner.hpp"

namespace gamow {

namespace {

constexpr cplx kI{0.0, 1.0};

struct Context {
  RunConfig cfg;
  ShellModel model;
  InitialState psi0;
  ResonantFamily family;
  CoefficientSet coeffs;
  OverlapMatrix overlaps;
  std::vector<double> grid;
  ProbabilitySeries series;  // at the first probe, cfg.tail_completion path
  std::vector<Pole> poles;
  double solve_seconds = 0.0;
};

Context build_context(const RunConfig& cfg) {
  const ShellModel model = cfg.model();
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Pole> poles = find_poles(model, cfg.truncation_N);
  const auto t1 = std::chrono::steady_clock::now();
  std::vector<ResonantState> states;
  states.reserve(poles.size());
  for (const Pole& p : poles) states.push_back(normalize(model, p));
  ResonantFamily family = ResonantFamily::from_states(
      model, [&] {
        std::vector<ResonantState> full;
        for (const ResonantState& s : states) {
          full.push_back(mirror_state(s));
          full.push_back(s);
        }
        return full;
      }());
  const InitialState psi0 = initial_state_box_mode(model, cfg.initial_mode);
  CoefficientSet coeffs = build_coefficients(family, psi0);
  OverlapMatrix overlaps = build_overlap_matrix(family);
  std::vector<double> grid = make_log_grid(
      cfg.time_grid.t_min, cfg.time_grid.t_max, cfg.time_grid.points_per_decade);
  ProbabilitySeries series = build_probability_series(
      family, coeffs, overlaps, grid, cfg.probes.front().first,
      cfg.probes.front().second, cfg.tail_completion);
  return Context{cfg,
                 model,
                 psi0,
                 std::move(family),
                 std::move(coeffs),
                 std::move(overlaps),
                 std::move(grid),
                 std::move(series),
                 std::move(poles),
                 std::chrono::duration<double>(t1 - t0).count()};
}

std::string yn(bool b) { return b ? "true" : "false"; }

CriterionResult criterion_poles(const Context& ctx) {
  CriterionResult r{1, "pole family", false, ""};
  double max_resid = 0.0;
  int max_iter = 0;
  for (const Pole& p : ctx.poles) {
    max_resid = std::max(max_resid, p.residual);
    max_iter = std::max(max_iter, p.iterations);
  }
  int tiles_ok = 0;
  const int N = ctx.cfg.truncation_N;
  for (int n = 1; n <= N; ++n)
    if (count_poles_argument_principle(ctx.model,
                                       tile_window(ctx.model, n)) == 1)
      ++tiles_ok;
  bool mirrors_exact = true;
  for (int n = 1; n <= N; ++n)
    mirrors_exact =
        mirrors_exact && (ctx.family.k(-n) == -std::conj(ctx.family.k(n)));
  const bool within_budget = ctx.solve_seconds < 1.0;
  r.pass = (max_resid < 1e-12) && (tiles_ok == N) && mirrors_exact &&
           within_budget;
  r.detail = "max rel residual = " + fmt17(max_resid) +
             " (tol 1e-12); max Newton iterations = " + fmt_int(max_iter) +
             "; tiles counting one pole = " + fmt_int(tiles_ok) + "/" +
             fmt_int(N) + "; mirrors exact = " + yn(mirrors_exact) +
             "; solve within 1 s = " + yn(within_budget);
  return r;
}

CriterionResult criterion_normalization(const Context& ctx) {
  CriterionResult r{2, "gamow normalization", false, ""};
  double worst = 0.0;
  for (int n = 1; n <= ctx.cfg.truncation_N; ++n) {
    const ResonantState s = ctx.family.state(n);
    const cplx k = s.pole.k;
    const cplx integral = quad_adaptive(
        [&](double x) -> cplx {
          const cplx u = eval_u_inner(s, x);
          return u * u;
        },
        0.0, ctx.model.radius_R, 1e-13);
    const cplx uR = eval_u_inner(s, ctx.model.radius_R);
    const cplx gamow = integral + kI * uR * uR / (2.0 * k);
    worst = std::max(worst, std::abs(gamow - 1.0));
  }
  r.pass = worst < 1e-10;
  r.detail = "max |int u^2 + i u(R)^2/(2k) - 1| = " + fmt17(worst) +
             " over n = 1.." + fmt_int(ctx.cfg.truncation_N) + " (tol 1e-10)";
  return r;
}

CriterionResult criterion_sum_rule(const Context& ctx) {
  CriterionResult r{3, "sum-rule decay", false, ""};
  const auto [pr, prp] = ctx.cfg.probes.front();
  const double s5 = std::abs(sum_rule_partial(ctx.family, pr, prp, 5));
  const double sN = std::abs(
      sum_rule_partial(ctx.family, pr, prp, ctx.cfg.truncation_N));
  const double ratio = s5 / sN;
  r.pass = ratio >= 10.0;
  r.detail = "|sum rule| at N=5: " + fmt17(s5) + ", at N=" +
             fmt_int(ctx.cfg.truncation_N) + ": " + fmt17(sN) +
             "; ratio = " + fmt17(ratio) + " (need >= 10)";
  return r;
}

cplx f_value(const Context& ctx, double x, int N) {
  cplx acc{};
  for (int n = 1; n <= N; ++n) {
    const ResonantState s = ctx.family.state(n);
    const cplx term = ctx.coeffs.at(n) * eval_u_inner(s, x) / s.pole.k;
    acc += cplx{0.0, 2.0 * term.imag()};
  }
  return acc;
}

CriterionResult criterion_delta(const Context& ctx) {
  CriterionResult r{4, "delta diagnostic", false, ""};
  const int N = ctx.cfg.truncation_N;
  const DeltaValue dN = delta_partial(ctx.coeffs, ctx.overlaps, ctx.family, N);
  const DeltaValue d10 =
      delta_partial(ctx.coeffs, ctx.overlaps, ctx.family, 10);
  const double over_mass = std::abs(dN.delta) / dN.term_mass;
  const double shrink = std::abs(dN.delta) / std::abs(d10.delta);
  const double f_int = quad_adaptive(
      [&](double x) { return std::norm(f_value(ctx, x, 10)); }, 0.0,
      ctx.model.radius_R, 1e-13);
  const double identity_err =
      std::abs(d10.delta - f_int) / std::abs(d10.delta);
  r.pass = (over_mass < 1e-3) && (shrink < 0.2) && (identity_err < 1e-8);
  r.detail = "|delta|/mass = " + fmt17(over_mass) +
             " (tol 1e-3); |delta_N|/|delta_10| = " + fmt17(shrink) +
             " (need < 0.2); delta_10 vs int |f_10|^2 rel err = " +
             fmt17(identity_err) + " (tol 1e-8)";
  return r;
}

CriterionResult criterion_f_decay(const Context& ctx) {
  CriterionResult r{5, "f-profile decay", false, ""};
  const std::vector<double> grid = diagnostic_grid(ctx.model);
  const double f10 = f_partial(ctx.coeffs, ctx.family, grid, 10).sup_norm;
  const double f20 = f_partial(ctx.coeffs, ctx.family, grid, 20).sup_norm;
  const double fN = f_partial(ctx.coeffs, ctx.family, grid,
                              ctx.cfg.truncation_N)
                        .sup_norm;
  const bool monotone = (f10 > f20) && (f20 > fN);
  r.pass = monotone && (fN <= 1e-3);
  r.detail = "sup |f_N| on the diagnostic grid: N=10: " + fmt17(f10) +
             ", N=20: " + fmt17(f20) + ", N=" + fmt_int(ctx.cfg.truncation_N) +
             ": " + fmt17(fN) + "; monotone = " + yn(monotone) +
             " and final <= 1e-3 = " + yn(fN <= 1e-3);
  return r;
}

CriterionResult criterion_remainder_tail(const Context& ctx) {
  CriterionResult r{6, "remainder tail", false, ""};
  const TailWindow win = auto_window(ctx.family, ctx.grid, 0.5);
  const auto [pr, prp] = ctx.cfg.probes.front();
  std::vector<double> tw, yw;
  bool scaled_decreasing = true;
  double ratio_lo = 0.0, ratio_hi = 0.0;
  double prev_scaled = 0.0;
  bool first = true;
  for (int i : win.indices) {
    const double t = ctx.grid[i];
    const GreenRemainder gr =
        green_remainder(ctx.family, t, pr, prp, ctx.cfg.tail_completion);
    tw.push_back(t);
    yw.push_back(gr.remainder);
    const double scaled = gr.remainder * std::sqrt(t);
    if (!first && scaled >= prev_scaled) scaled_decreasing = false;
    prev_scaled = scaled;
    const double ratio = gr.remainder / gr.b_prediction;
    if (first) {
      ratio_lo = ratio_hi = ratio;
      first = false;
    } else {
      ratio_lo = std::min(ratio_lo, ratio);
      ratio_hi = std::max(ratio_hi, ratio);
    }
  }
  const SlopeEstimate est = tail_slope(tw, yw);
  const bool slope_ok = std::abs(est.slope - (-1.5)) <= 0.05;
  const bool ratio_ok = (ratio_lo >= 0.9) && (ratio_hi <= 1.1);
  r.pass = slope_ok && scaled_decreasing && ratio_ok;
  r.detail = "remainder slope on [" + fmt17(est.t_lo) + ", " +
             fmt17(est.t_hi) + "] = " + fmt17(est.slope) +
             " (want -1.5 +/- 0.05, stderr " + fmt17(est.stderr_slope) +
             "); sqrt(t)-scaled decreasing = " + yn(scaled_decreasing) +
             "; remainder/B-prediction in [" + fmt17(ratio_lo) + ", " +
             fmt17(ratio_hi) + "] (want within 0.1 of 1)";
  return r;
}

SlopeEstimate windowed_slope(const std::vector<double>& grid,
                             const std::vector<double>& y,
                             const TailWindow& win) {
  std::vector<double> tw, yw;
  for (int i : win.indices) {
    tw.push_back(grid[i]);
    yw.push_back(y[i]);
  }
  return tail_slope(tw, yw);
}

CriterionResult criterion_probability_tails(const Context& ctx) {
  CriterionResult r{7, "probability tails", false, ""};
  const TailWindow win = auto_window(ctx.family, ctx.grid, 1.0);
  const SlopeEstimate sS = windowed_slope(ctx.grid, ctx.series.S, win);
  const SlopeEstimate sP = windowed_slope(ctx.grid, ctx.series.P, win);
  const bool main_ok = std::abs(sS.slope - (-3.0)) <= 0.1 &&
                       std::abs(sP.slope - (-3.0)) <= 0.1;
  const double dist_from_one = std::abs(sP.slope - (-1.0));
  const bool excludes_one = dist_from_one >= 1.5;

  // Truncation invariance: rerun the whole pipeline at N = 20.
  const ResonantFamily fam20 = ResonantFamily::build(ctx.model, 20);
  const CoefficientSet coeffs20 = build_coefficients(fam20, ctx.psi0);
  const OverlapMatrix overlaps20 = build_overlap_matrix(fam20);
  const ProbabilitySeries series20 = build_probability_series(
      fam20, coeffs20, overlaps20, ctx.grid, ctx.cfg.probes.front().first,
      ctx.cfg.probes.front().second, ctx.cfg.tail_completion);
  const TailWindow win20 = auto_window(fam20, ctx.grid, 1.0);
  const SlopeEstimate sS20 = windowed_slope(ctx.grid, series20.S, win20);
  const SlopeEstimate sP20 = windowed_slope(ctx.grid, series20.P, win20);
  const bool n20_ok = std::abs(sS20.slope - (-3.0)) <= 0.1 &&
                      std::abs(sP20.slope - (-3.0)) <= 0.1;

  // Probe invariance of the green-function tail.
  const TailWindow win_amp = auto_window(ctx.family, ctx.grid, 0.5);
  bool probes_ok = true;
  std::string probe_list;
  for (const auto& [pr, prp] : ctx.cfg.probes) {
    std::vector<double> tw, yw;
    for (int i : win_amp.indices) {
      tw.push_back(ctx.grid[i]);
      yw.push_back(green_remainder(ctx.family, ctx.grid[i], pr, prp,
                                   ctx.cfg.tail_completion)
                       .remainder);
    }
    const SlopeEstimate est = tail_slope(tw, yw);
    probes_ok = probes_ok && (std::abs(est.slope - (-1.5)) <= 0.1);
    if (!probe_list.empty()) probe_list += ", ";
    probe_list += fmt17(est.slope);
  }

  r.pass = main_ok && excludes_one && n20_ok && probes_ok;
  r.detail = "S slope = " + fmt17(sS.slope) + ", P slope = " +
             fmt17(sP.slope) + " at N=" + fmt_int(ctx.cfg.truncation_N) +
             " (want -3 +/- 0.1); at N=20: S " + fmt17(sS20.slope) + ", P " +
             fmt17(sP20.slope) + "; |P slope - (-1)| = " +
             fmt17(dist_from_one) +
             " (need >= 1.5, refuting a t^-1 tail); remainder slopes per "
             "probe: " +
             probe_list + " (want -1.5 +/- 0.1)";
  return r;
}

double trapezoid_P(const WaveField& f, double R, double h) {
  double p = 0.0;
  for (size_t j = 0; j < f.r.size(); ++j) {
    if (f.r[j] > R + 1e-12) break;
    const double wgt = std::abs(f.r[j] - R) < 1e-12 ? 0.5 : 1.0;
    p += wgt * std::norm(f.psi[j]);
  }
  return h * p;
}

CriterionResult criterion_grid_oracle(const Context& ctx) {
  CriterionResult r{8, "grid oracle", false, ""};
  const Grid1D grid = ctx.cfg.oracle_grid();
  const double tau = 1.0 / slowest_rate(ctx.family);
  const double base = std::round(0.5 * tau / grid.dt) * grid.dt;
  std::vector<double> times;
  for (int j = 1; j <= 10; ++j) times.push_back(j * base);
  const std::vector<WaveField> fields =
      propagate_cn(ctx.model, ctx.psi0, grid, times,
                   ctx.cfg.oracle.cap.reflect_threshold);

  // Wavefunction comparison at t ~ tau (sample 2), interior nodes r <= R.
  const WaveField& at_tau = fields[1];
  double num = 0.0, den = 0.0;
  for (size_t j = 0; j < at_tau.r.size(); ++j) {
    if (at_tau.r[j] > ctx.model.radius_R + 1e-12) break;
    const cplx expansion =
        psi_t(ctx.family, ctx.coeffs, at_tau.time, at_tau.r[j], false);
    num += std::norm(at_tau.psi[j] - expansion);
    den += std::norm(at_tau.psi[j]);
  }
  const double rel_l2 = std::sqrt(num / den);

  double max_rel_p = 0.0;
  for (const WaveField& f : fields) {
    const double p_cn = trapezoid_P(f, ctx.model.radius_R, grid.h);
    const double p_exp =
        nonescape_P(ctx.family, ctx.coeffs, ctx.overlaps, f.time, false);
    max_rel_p = std::max(max_rel_p, std::abs(p_cn - p_exp) / p_cn);
  }

  Grid1D no_cap = grid;
  no_cap.cap_strength = 0.0;
  // Norm conservation holds wherever the wave sits (the Cayley step is
  // unitary), so the trailing-edge guard — which protects open-domain
  // physics comparisons — is irrelevant here and stays disabled.
  const std::vector<OracleSample> unit = oracle_probabilities(
      ctx.model, ctx.psi0, no_cap, {0.0, 1000.0 * grid.dt},
      std::numeric_limits<double>::infinity());
  const double drift = std::abs(unit[1].norm - unit[0].norm);

  r.pass = (rel_l2 <= 1e-2) && (max_rel_p <= 0.05) && (drift <= 1e-10);
  r.detail = "psi rel L2 at t = " + fmt17(at_tau.time) + " (~tau): " +
             fmt17(rel_l2) + " (tol 1e-2); max rel P diff over 10 samples to "
             "5 tau: " + fmt17(max_rel_p) + " (tol 0.05); cap-off norm drift "
             "over 1000 steps: " + fmt17(drift) +
             " (tol 1e-10); power-law tails lie beyond the absorbing-layer "
             "horizon and are not grid-validated";
  return r;
}

CriterionResult criterion_dual_paths(const Context& ctx) {
  CriterionResult r{9, "dual algebra paths", false, ""};
  std::vector<int> eligible;
  for (size_t i = 0; i < ctx.grid.size(); ++i)
    if (ctx.series.P[i] > 1e-12) eligible.push_back(static_cast<int>(i));
  if (eligible.size() < 10) {
    r.detail = "fewer than 10 grid times with P > 1e-12";
    return r;
  }
  double worst = 0.0;
  for (int j = 0; j < 10; ++j) {
    const int i =
        eligible[(j * (static_cast<int>(eligible.size()) - 1)) / 9];
    const double t = ctx.grid[i];
    const double bilinear = nonescape_P(ctx.family, ctx.coeffs, ctx.overlaps,
                                        t, ctx.cfg.tail_completion);
    const double direct = nonescape_P_quadrature(ctx.family, ctx.coeffs, t,
                                                 ctx.cfg.tail_completion);
    worst = std::max(worst,
                     std::abs(bilinear - direct) / std::abs(bilinear));
  }
  r.pass = worst <= 1e-8;
  r.detail = "max rel difference bilinear-vs-quadrature P over 10 grid times "
             "with P > 1e-12: " + fmt17(worst) + " (tol 1e-8)";
  return r;
}

struct PassOutcome {
  std::vector<CriterionResult> results;
  std::string canonical;
};

PassOutcome run_once(const RunConfig& cfg) {
  const Context ctx = build_context(cfg);
  PassOutcome out;
  out.results.push_back(criterion_poles(ctx));
  out.results.push_back(criterion_normalization(ctx));
  out.results.push_back(criterion_sum_rule(ctx));
  out.results.push_back(criterion_delta(ctx));
  out.results.push_back(criterion_f_decay(ctx));
  out.results.push_back(criterion_remainder_tail(ctx));
  out.results.push_back(criterion_probability_tails(ctx));
  out.results.push_back(criterion_grid_oracle(ctx));
  out.results.push_back(criterion_dual_paths(ctx));
  std::string canonical;
  for (const auto& [name, content] : generate_artifacts(cfg)) {
    canonical += "=== " + name + "\n";
    canonical += content;
  }
  for (const CriterionResult& r : out.results)
    canonical += fmt_int(r.id) + "|" + r.name + "|" + yn(r.pass) + "|" +
                 r.detail + "\n";
  out.canonical = std::move(canonical);
  return out;
}

}  // namespace

std::vector<CriterionResult> run_all_criteria(const RunConfig& cfg) {
  PassOutcome first = run_once(cfg);
  const PassOutcome second = run_once(cfg);
  CriterionResult c10{10, "deterministic artifacts", false, ""};
  c10.pass = first.canonical == second.canonical;
  c10.detail = "two consecutive full generations byte-identical = " +
               yn(c10.pass) + " (" +
               fmt_int(static_cast<long long>(first.canonical.size())) +
               " bytes compared)";
  first.results.push_back(c10);
  return first.results;
}

std::string format_criterion_line(const CriterionResult& r) {
  return std::string(r.pass ? "PASS" : "FAIL") + " criterion " +
         fmt_int(r.id) + " (" + r.name + "): " + r.detail;
}

}  // namespace gamow

#pragma once

#include <optional>
#include <vector>

#include "gamow/moshinsky.hpp"
#include "gamow/resonant_basis.hpp"

namespace gamow {

// Logarithmic grid t_i = t_min 10^{i/ppd}, i = 0..ceil(ppd log10(t_max/t_min)),
// last point clipped to t_max.
std::vector<double> make_log_grid(double t_min, double t_max,
                                  int points_per_decade);

// Plain per-pole time factor M(k_n, t) for every family member n = -N..N\{0}
// (index map OverlapMatrix::idx). Tail-completed variant subtracts, for t > 0,
// the certified-null leading power A/(k sqrt(t)) from every factor; both algebra
// paths below accept either set so ops and tail analysis can diverge.
VecC time_factors(const ResonantFamily& family, double t,
                  bool tail_completed);

// g_N(r,r';t) = sum_n u_n(r) u_n(r') M(k_n, t); with the closure carrying the
// 1/2, g_N(.,.;0) acts as the identity kernel on the interior.
cplx green_partial(const ResonantFamily& family, double t, double r, double rp,
                   bool tail_completed = false);

// psi_N(r,t) = sum_n C_n u_n(r) M(k_n, t).
cplx psi_t(const ResonantFamily& family, const CoefficientSet& coeffs,
           double t, double r, bool tail_completed = false);

// S(t) = <psi_0 | psi(t)> by quadrature over [0,R].
cplx survival_S(const ResonantFamily& family, const CoefficientSet& coeffs,
                const InitialState& psi0, double t,
                bool tail_completed = false);

// S(t) = sum_n C_n^2 M(k_n, t) using C_n = int psi_0 u_n (no conjugation).
cplx survival_S_series(const ResonantFamily& family,
                       const CoefficientSet& coeffs, double t,
                       bool tail_completed = false);

// P(t) = int_0^R |psi_N|^2 dr via the bilinear form
// sum_{rs} conj(C_r M_r) C_s M_s I_rs.
double nonescape_P(const ResonantFamily& family, const CoefficientSet& coeffs,
                   const OverlapMatrix& overlaps, double t,
                   bool tail_completed = false);

// Same P(t) by direct quadrature of |psi_N(r,t)|^2; used as the independent
// algebra path. Throws PathDisagreement if the two differ beyond rel_tol.
double nonescape_P_quadrature(const ResonantFamily& family,
                              const CoefficientSet& coeffs, double t,
                              bool tail_completed = false);

double nonescape_P_dual(const ResonantFamily& family,
                        const CoefficientSet& coeffs,
                        const OverlapMatrix& overlaps, double t,
                        double rel_tol = 1e-8, bool tail_completed = false);

struct GreenRemainder {
  double remainder = 0.0;     // |g_N(r,r';t) - exponential part|
  double b_prediction = 0.0;  // |sum_n u_n(r) u_n(r') B / k_n^3| t^{-3/2}
};

// Remainder after subtracting the exponential (decaying-pole) part of g_N.
// With tail completion the surviving power is the B term ~ t^{-3/2}.
GreenRemainder green_remainder(const ResonantFamily& family, double t, double r,
                               double rp, bool tail_completed = true);

struct SlopeEstimate {
  double t_lo = 0.0;
  double t_hi = 0.0;
  int samples = 0;
  double slope = 0.0;
  double stderr_slope = 0.0;
};

// Least-squares fit of ln y against ln t. Throws NonPositiveSample on y <= 0
// and WindowTooSmall on fewer than two points.
SlopeEstimate tail_slope(const std::vector<double>& t,
                         const std::vector<double>& y);

// Latest full decade [10^p, 10^{p+1}] of the grid on which the slowest
// exponential is negligible: exp(-gamma1 t * decay_scale) < 1e-6 * |series|.
// decay_scale = 1 for probability-like series (|...|^2), 1/2 for amplitudes.
// Requires >= 8 grid samples inside the decade; throws WindowTooSmall.
struct TailWindow {
  double t_lo = 0.0;
  double t_hi = 0.0;
  std::vector<int> indices;
};

TailWindow auto_window(const ResonantFamily& family,
                       const std::vector<double>& grid, double decay_scale);

struct ProbabilitySeries {
  std::vector<double> t;
  std::vector<double> S;  // |S(t)|^2
  std::vector<double> P;
  std::vector<double> remainder;  // green remainder at the first probe
  std::vector<double> local_slope_S;  // centered d ln S / d ln t; NaN at ends
  std::vector<double> local_slope_P;
};

// Evaluates S, P and the probe-point remainder over the grid. Remainder entries
// below the asymptotic regime (|k_1|^2 t < 4) are NaN rather than extrapolated.
ProbabilitySeries build_probability_series(const ResonantFamily& family,
                                           const CoefficientSet& coeffs,
                                           const OverlapMatrix& overlaps,
                                           const std::vector<double>& grid,
                                           double probe_r, double probe_rp,
                                           bool tail_completed);

// Slowest decay rate Gamma_1 = -4 Re(k_1) Im(k_1) and lifetime tau = 1/Gamma_1.
double slowest_rate(const ResonantFamily& family);

}  // namespace gamow

#include "gamow/propagation.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gamow/quadrature.hpp"

namespace gamow {

namespace {

constexpr cplx kI{0.0, 1.0};

double nan_d() { return std::numeric_limits<double>::quiet_NaN(); }

}  // namespace

std::vector<double> make_log_grid(double t_min, double t_max,
                                  int points_per_decade) {
  if (!(t_min > 0.0) || !(t_max > t_min))
    throw OutOfRange("need 0 < t_min < t_max");
  if (points_per_decade < 1)
    throw OutOfRange("points_per_decade must be >= 1");
  const int steps = static_cast<int>(
      std::ceil(points_per_decade * std::log10(t_max / t_min) - 1e-9));
  std::vector<double> grid(steps + 1);
  for (int i = 0; i <= steps; ++i)
    grid[i] = t_min * std::pow(10.0, static_cast<double>(i) / points_per_decade);
  if (grid.back() > t_max || std::abs(grid.back() - t_max) <= 1e-9 * t_max)
    grid.back() = t_max;
  return grid;
}

VecC time_factors(const ResonantFamily& family, double t,
                  bool tail_completed) {
  const int N = family.half_size();
  OverlapMatrix index_helper;  // reuse the shared idx() convention
  index_helper.half_size_N = N;
  VecC factors(2 * N);
  const cplx A = asymptotic_constants().A;
  const double st = t > 0.0 ? std::sqrt(t) : 0.0;
  for (int n = -N; n <= N; ++n) {
    if (n == 0) continue;
    const cplx k = family.k(n);
    cplx M = moshinsky_M(k, t).value;
    if (tail_completed && t > 0.0) M -= A / (k * st);
    factors[index_helper.idx(n)] = M;
  }
  return factors;
}

cplx green_partial(const ResonantFamily& family, double t, double r, double rp,
                   bool tail_completed) {
  const int N = family.half_size();
  const VecC factors = time_factors(family, t, tail_completed);
  CoefficientSet idx;  // idx() convention only
  idx.half_size_N = N;
  cplx acc{};
  for (int n = -N; n <= N; ++n) {
    if (n == 0) continue;
    acc += family.u(n, r) * family.u(n, rp) * factors[idx.idx(n)];
  }
  return acc;
}

cplx psi_t(const ResonantFamily& family, const CoefficientSet& coeffs,
           double t, double r, bool tail_completed) {
  const int N = family.half_size();
  if (coeffs.half_size_N != N)
    throw SizeMismatch("coefficient set does not match family");
  const VecC factors = time_factors(family, t, tail_completed);
  cplx acc{};
  for (int n = -N; n <= N; ++n) {
    if (n == 0) continue;
    acc += coeffs.at(n) * family.u(n, r) * factors[coeffs.idx(n)];
  }
  return acc;
}

cplx survival_S(const ResonantFamily& family, const CoefficientSet& coeffs,
                const InitialState& psi0, double t, bool tail_completed) {
  const int N = family.half_size();
  if (coeffs.half_size_N != N)
    throw SizeMismatch("coefficient set does not match family");
  const VecC factors = time_factors(family, t, tail_completed);
  // psi(r) = sum_n w_n sin(k_n r) with w_n frozen: quadrature then costs one
  // sine per family member per node.
  std::vector<cplx> w(2 * N);
  std::vector<cplx> k(2 * N);
  for (int n = -N; n <= N; ++n) {
    if (n == 0) continue;
    const ResonantState s = family.state(n);
    w[coeffs.idx(n)] =
        coeffs.at(n) * s.amplitude_A * factors[coeffs.idx(n)];
    k[coeffs.idx(n)] = s.pole.k;
  }
  auto integrand = [&](double r) -> cplx {
    cplx psi{};
    for (int j = 0; j < 2 * N; ++j) psi += w[j] * std::sin(k[j] * r);
    return psi0(r) * psi;
  };
  return quad_adaptive(integrand, 0.0, family.model().radius_R, 1e-12);
}

cplx survival_S_series(const ResonantFamily& family,
                       const CoefficientSet& coeffs, double t,
                       bool tail_completed) {
  const int N = family.half_size();
  if (coeffs.half_size_N != N)
    throw SizeMismatch("coefficient set does not match family");
  const VecC factors = time_factors(family, t, tail_completed);
  cplx acc{};
  for (int n = -N; n <= N; ++n) {
    if (n == 0) continue;
    const cplx c = coeffs.at(n);
    acc += c * c * factors[coeffs.idx(n)];  // C_n^2, no conjugation
  }
  return acc;
}

double nonescape_P(const ResonantFamily& family, const CoefficientSet& coeffs,
                   const OverlapMatrix& overlaps, double t,
                   bool tail_completed) {
  const int N = family.half_size();
  if (coeffs.half_size_N != N || overlaps.half_size_N != N)
    throw SizeMismatch("coefficients/overlaps do not match family");
  const VecC factors = time_factors(family, t, tail_completed);
  VecC weights(2 * N);
  for (int j = 0; j < 2 * N; ++j) weights[j] = coeffs.C[j] * factors[j];
  const cplx P = weights.adjoint() * (overlaps.entries * weights);
  return P.real();
}

double nonescape_P_quadrature(const ResonantFamily& family,
                              const CoefficientSet& coeffs, double t,
                              bool tail_completed) {
  const int N = family.half_size();
  if (coeffs.half_size_N != N)
    throw SizeMismatch("coefficient set does not match family");
  const VecC factors = time_factors(family, t, tail_completed);
  std::vector<cplx> w(2 * N), k(2 * N);
  for (int n = -N; n <= N; ++n) {
    if (n == 0) continue;
    const ResonantState s = family.state(n);
    w[coeffs.idx(n)] =
        coeffs.at(n) * s.amplitude_A * factors[coeffs.idx(n)];
    k[coeffs.idx(n)] = s.pole.k;
  }
  auto integrand = [&](double r) -> double {
    cplx psi{};
    for (int j = 0; j < 2 * N; ++j) psi += w[j] * std::sin(k[j] * r);
    return std::norm(psi);
  };
  // P decays like t^-3, so a fixed absolute tolerance eventually swamps the
  // value itself; a pilot pass sets the scale, then the refinement pass
  // resolves the integral to a relative target. The integrand is analytic on
  // [0, R] and the floor stays far above the ~1e-27 accumulation roundoff.
  const double R = family.model().radius_R;
  const double pilot = quad_adaptive(integrand, 0.0, R, 1e-13);
  const double abs_tol = std::max(1e-11 * std::abs(pilot), 1e-22);
  return quad_adaptive(integrand, 0.0, R, abs_tol);
}

double nonescape_P_dual(const ResonantFamily& family,
                        const CoefficientSet& coeffs,
                        const OverlapMatrix& overlaps, double t,
                        double rel_tol, bool tail_completed) {
  const double bilinear = nonescape_P(family, coeffs, overlaps, t,
                                      tail_completed);
  const double direct =
      nonescape_P_quadrature(family, coeffs, t, tail_completed);
  const double scale = std::max(std::abs(bilinear), std::abs(direct));
  if (scale > 0.0 && std::abs(bilinear - direct) > rel_tol * scale)
    throw PathDisagreement("bilinear " + std::to_string(bilinear) +
                           " vs quadrature " + std::to_string(direct) +
                           " at t = " + std::to_string(t));
  return bilinear;
}

GreenRemainder green_remainder(const ResonantFamily& family, double t,
                               double r, double rp, bool tail_completed) {
  if (!(t > 0.0)) throw NegativeTime("remainder needs t > 0");
  const int N = family.half_size();
  const cplx g = green_partial(family, t, r, rp, tail_completed);
  cplx expo{};
  for (int n = 1; n <= N; ++n) {  // only Re k > 0 members carry e^{-ik^2 t}
    const cplx k = family.k(n);
    expo += family.u(n, r) * family.u(n, rp) * std::exp(-kI * (k * k) * t);
  }
  const cplx B = asymptotic_constants().B;
  cplx bsum{};
  for (int n = -N; n <= N; ++n) {
    if (n == 0) continue;
    const cplx k = family.k(n);
    bsum += family.u(n, r) * family.u(n, rp) * B / (k * k * k);
  }
  GreenRemainder out;
  out.remainder = std::abs(g - expo);
  out.b_prediction = std::abs(bsum) / (t * std::sqrt(t));
  return out;
}

SlopeEstimate tail_slope(const std::vector<double>& t,
                         const std::vector<double>& y) {
  if (t.size() != y.size()) throw SizeMismatch("t/y lengths differ");
  const int n = static_cast<int>(t.size());
  if (n < 2) throw WindowTooSmall("slope fit needs >= 2 samples");
  std::vector<double> x(n), z(n);
  for (int i = 0; i < n; ++i) {
    if (!(t[i] > 0.0) || !(y[i] > 0.0))
      throw NonPositiveSample("log-log fit at t = " + std::to_string(t[i]));
    x[i] = std::log(t[i]);
    z[i] = std::log(y[i]);
  }
  double xm = 0.0, zm = 0.0;
  for (int i = 0; i < n; ++i) {
    xm += x[i];
    zm += z[i];
  }
  xm /= n;
  zm /= n;
  double sxx = 0.0, sxz = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (x[i] - xm) * (x[i] - xm);
    sxz += (x[i] - xm) * (z[i] - zm);
  }
  if (sxx == 0.0) throw WindowTooSmall("degenerate abscissa");
  SlopeEstimate est;
  est.t_lo = t.front();
  est.t_hi = t.back();
  est.samples = n;
  est.slope = sxz / sxx;
  if (n > 2) {
    double ss = 0.0;
    const double intercept = zm - est.slope * xm;
    for (int i = 0; i < n; ++i) {
      const double resid = z[i] - (intercept + est.slope * x[i]);
      ss += resid * resid;
    }
    est.stderr_slope = std::sqrt(ss / (n - 2) / sxx);
  }
  return est;
}

double slowest_rate(const ResonantFamily& family) {
  const cplx k1 = family.k(1);
  return -4.0 * k1.real() * k1.imag();
}

TailWindow auto_window(const ResonantFamily& family,
                       const std::vector<double>& grid, double decay_scale) {
  if (!(decay_scale > 0.0)) throw OutOfRange("decay_scale must be positive");
  if (grid.size() < 2) throw WindowTooSmall("grid too short");
  const double gamma1 = slowest_rate(family);
  // Admissible once the slowest exponential sits 1e-6 below the power tail
  // (t^{-3 decay_scale}: probability series decay_scale = 1, amplitudes 1/2).
  auto admissible = [&](double t) {
    return std::exp(-gamma1 * decay_scale * t) <
           1e-6 * std::pow(t, -3.0 * decay_scale);
  };
  const int p_hi =
      static_cast<int>(std::floor(std::log10(grid.back()) + 1e-12));
  for (int p = p_hi; ; --p) {
    const double lo = std::pow(10.0, p - 1);
    const double hi = std::pow(10.0, p);
    if (lo < grid.front() * (1.0 - 1e-12)) break;
    if (!admissible(lo)) break;  // earlier decades are worse, stop
    TailWindow win;
    win.t_lo = lo;
    win.t_hi = hi;
    for (size_t i = 0; i < grid.size(); ++i)
      if (grid[i] >= lo * (1.0 - 1e-12) && grid[i] <= hi * (1.0 + 1e-12))
        win.indices.push_back(static_cast<int>(i));
    if (win.indices.size() >= 8) return win;
  }
  throw WindowTooSmall(
      "no exponential-free decade with >= 8 samples on this grid");
}

ProbabilitySeries build_probability_series(const ResonantFamily& family,
                                           const CoefficientSet& coeffs,
                                           const OverlapMatrix& overlaps,
                                           const std::vector<double>& grid,
                                           double probe_r, double probe_rp,
                                           bool tail_completed) {
  const double k1sq = std::norm(family.k(1));
  ProbabilitySeries out;
  out.t = grid;
  const size_t n = grid.size();
  out.S.resize(n);
  out.P.resize(n);
  out.remainder.resize(n);
  out.local_slope_S.assign(n, nan_d());
  out.local_slope_P.assign(n, nan_d());
  for (size_t i = 0; i < n; ++i) {
    const double t = grid[i];
    out.S[i] = std::norm(survival_S_series(family, coeffs, t, tail_completed));
    out.P[i] = nonescape_P(family, coeffs, overlaps, t, tail_completed);
    out.remainder[i] =
        (t > 0.0 && k1sq * t >= 4.0)
            ? green_remainder(family, t, probe_r, probe_rp, tail_completed)
                  .remainder
            : nan_d();
  }
  for (size_t i = 1; i + 1 < n; ++i) {
    const double dln_t = std::log(grid[i + 1] / grid[i - 1]);
    if (out.S[i + 1] > 0.0 && out.S[i - 1] > 0.0)
      out.local_slope_S[i] = std::log(out.S[i + 1] / out.S[i - 1]) / dln_t;
    if (out.P[i + 1] > 0.0 && out.P[i - 1] > 0.0)
      out.local_slope_P[i] = std::log(out.P[i + 1] / out.P[i - 1]) / dln_t;
  }
  return out;
}

}  // namespace gamow

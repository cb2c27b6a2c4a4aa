#include "gamow/pole_solver.hpp"

#include <cmath>
#include <string>

namespace gamow {

namespace {

constexpr cplx kI{0.0, 1.0};

std::string cstr(cplx z) {
  return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

double relative_scale(cplx k) { return std::max(1.0, 2.0 * std::abs(k)); }

}  // namespace

PoleWindow make_window(double re_min, double re_max, double im_min,
                       double im_max) {
  if (!(re_min < re_max) || !(im_min < im_max))
    throw OutOfRange("window edges out of order");
  return PoleWindow{re_min, re_max, im_min, im_max};
}

cplx pole_equation_residual(const ShellModel& model, cplx k) {
  return 2.0 * kI * k -
         model.lambda * (1.0 - std::exp(2.0 * kI * k * model.radius_R));
}

cplx pole_equation_derivative(const ShellModel& model, cplx k) {
  // d/dk [lambda e^{2ikR}] = 2iR lambda e^{2ikR}: both terms carry +2i.
  return 2.0 * kI +
         2.0 * kI * model.lambda * model.radius_R *
             std::exp(2.0 * kI * k * model.radius_R);
}

cplx initial_guess(const ShellModel& model, int n) {
  if (n < 1) throw OutOfRange("initial_guess wants n >= 1, got " +
                              std::to_string(n));
  const double R = model.radius_R;
  const double re = n * kPi / R;
  // Depth balancing |e^{2ikR}| = 1 + 2|k|/lambda at |k| ~ n pi / R; the true
  // pole always sits between this and the real axis.
  const double im =
      -std::log(1.0 + 2.0 * n * kPi / (model.lambda * R)) / (2.0 * R);
  return {re, im};
}

Pole newton_polish(const ShellModel& model, cplx k0, double tol,
                   int max_iter) {
  cplx k = k0;
  for (int it = 0; it <= max_iter; ++it) {
    if (!std::isfinite(k.real()) || !std::isfinite(k.imag()))
      throw NoConvergence("iterate left the finite plane from k0 = " +
                          cstr(k0));
    const cplx F = pole_equation_residual(model, k);
    const double rel = std::abs(F) / relative_scale(k);
    if (rel <= tol) {
      if (std::abs(k) * model.radius_R < 1e-8)
        throw ConvergedToTrivialRoot("k = " + cstr(k) + " from k0 = " +
                                     cstr(k0));
      return Pole{0, k, rel, it};
    }
    const cplx dF = pole_equation_derivative(model, k);
    if (std::abs(dF) < 1e-300)
      throw DerivativeVanished("at k = " + cstr(k));
    k -= F / dF;
  }
  throw NoConvergence("no root within " + std::to_string(max_iter) +
                      " Newton steps from k0 = " + cstr(k0));
}

std::vector<Pole> find_poles(const ShellModel& model, int N) {
  if (N < 1) throw OutOfRange("need N >= 1, got " + std::to_string(N));
  std::vector<Pole> out;
  out.reserve(N);
  for (int n = 1; n <= N; ++n) {
    Pole p = newton_polish(model, initial_guess(model, n));
    p.index_n = n;
    if (!(p.k.imag() < 0.0))
      throw MissedPole("n = " + std::to_string(n) +
                       " converged outside the fourth quadrant: " + cstr(p.k));
    if (!out.empty()) {
      if (std::abs(p.k - out.back().k) * model.radius_R < 1e-6)
        throw DuplicatePole("n = " + std::to_string(n) + " and n = " +
                            std::to_string(n - 1) + " coincide at " +
                            cstr(p.k));
      if (!(p.k.real() > out.back().k.real()))
        throw MissedPole("Re k not increasing at n = " + std::to_string(n));
    }
    out.push_back(p);
  }
  const int counted =
      count_poles_argument_principle(model, covering_window(model, N));
  if (counted != N)
    throw MissedPole("argument principle counts " + std::to_string(counted) +
                     " zeros in the covering window, expected " +
                     std::to_string(N));
  return out;
}

PoleWindow covering_window(const ShellModel& model, int N) {
  if (N < 1) throw OutOfRange("need N >= 1, got " + std::to_string(N));
  // Size the box from polished positions: the guesses alone misplace im_max
  // badly at large lambda (true depths shrink like 1/lambda^2).
  double re_lo = 0.0, re_hi = 0.0, im_lo = 0.0, im_hi = 0.0;
  for (int n = 1; n <= N; ++n) {
    const Pole p = newton_polish(model, initial_guess(model, n));
    if (n == 1) {
      re_lo = re_hi = p.k.real();
      im_lo = im_hi = p.k.imag();
    } else {
      re_lo = std::min(re_lo, p.k.real());
      re_hi = std::max(re_hi, p.k.real());
      im_lo = std::min(im_lo, p.k.imag());
      im_hi = std::max(im_hi, p.k.imag());
    }
  }
  const double R = model.radius_R;
  // Half the asymptotic pole spacing keeps neighbours n = 0 and n = N+1 out;
  // halving the shallowest depth keeps the boundary away from the real axis
  // (and from the trivial zero at k = 0).
  return make_window(re_lo - 0.5 * kPi / R, re_hi + 0.5 * kPi / R,
                     im_lo - 0.5 / R, 0.5 * im_hi);
}

PoleWindow tile_window(const ShellModel& model, int n) {
  const Pole p = newton_polish(model, initial_guess(model, n));
  const double R = model.radius_R;
  return make_window(p.k.real() - 0.5 * kPi / R, p.k.real() + 0.5 * kPi / R,
                     p.k.imag() - 0.5 / R, 0.5 * p.k.imag());
}

std::vector<Pole> extend_symmetric(const std::vector<Pole>& poles) {
  std::vector<Pole> out;
  out.reserve(2 * poles.size());
  for (auto it = poles.rbegin(); it != poles.rend(); ++it) {
    if (it->index_n < 1)
      throw OutOfRange("extend_symmetric wants the n >= 1 family only");
    Pole m = *it;
    m.index_n = -it->index_n;
    m.k = -std::conj(it->k);  // F(-conj k) = conj F(k): mirrors are exact
    out.push_back(m);
  }
  out.insert(out.end(), poles.begin(), poles.end());
  return out;
}

namespace {

// Winding turns along one straight segment, refined until the sampling is
// provably alias-free: phase steps all below pi/2 AND the total agrees with
// the half-resolution total. The pi/2 gate alone can pass aliased samplings
// whose true steps exceed 3pi/2.
double segment_turns(const ShellModel& model, cplx a, cplx b) {
  double prev_turns = 0.0;
  bool have_prev = false;
  for (int pts = 64; pts <= (1 << 22); pts *= 2) {
    double turns = 0.0;
    double max_step = 0.0;
    double phase_prev = 0.0;
    for (int i = 0; i <= pts; ++i) {
      const cplx z = a + (b - a) * (static_cast<double>(i) / pts);
      const cplx F = pole_equation_residual(model, z);
      if (std::abs(F) < 1e-8)
        throw BoundaryTooCloseToZero("|F| = " + std::to_string(std::abs(F)) +
                                     " at " + cstr(z));
      const double phase = std::arg(F);
      if (i > 0) {
        double d = phase - phase_prev;
        while (d > kPi) d -= 2.0 * kPi;
        while (d <= -kPi) d += 2.0 * kPi;
        max_step = std::max(max_step, std::abs(d));
        turns += d / (2.0 * kPi);
      }
      phase_prev = phase;
    }
    if (max_step < 0.5 * kPi && have_prev &&
        std::abs(turns - prev_turns) < 1e-3)
      return turns;
    prev_turns = turns;
    have_prev = true;
  }
  throw NoConvergence("boundary phase sampling did not stabilize");
}

}  // namespace

int count_poles_argument_principle(const ShellModel& model,
                                   const PoleWindow& w) {
  const cplx c1{w.re_min, w.im_min}, c2{w.re_max, w.im_min},
      c3{w.re_max, w.im_max}, c4{w.re_min, w.im_max};
  const double total = segment_turns(model, c1, c2) +
                       segment_turns(model, c2, c3) +
                       segment_turns(model, c3, c4) +
                       segment_turns(model, c4, c1);
  const double nearest = std::round(total);
  if (std::abs(total - nearest) > 0.05)
    throw NonIntegerWinding("winding = " + std::to_string(total));
  return static_cast<int>(nearest);
}

}  // namespace gamow

#include "gamow/moshinsky.hpp"

#include <array>
#include <cmath>
#include <string>

namespace gamow {

namespace {

constexpr cplx kI{0.0, 1.0};

// Rational approximation on the upper half plane (Weideman 1994), degree 48.
// Coefficients are a plain real DFT of the weighted Gaussian sampled on the
// tangent-mapped circle; built once at first use, no table copying.
struct WeidemanTable {
  static constexpr int N = 48;
  double L = 0.0;
  std::array<double, N> a{};  // a[m] multiplies Z^m

  WeidemanTable() {
    constexpr int M = 2 * N;   // 96
    constexpr int M2 = 2 * M;  // 192
    L = std::sqrt(N / std::sqrt(2.0));
    std::array<double, M2> f{};  // f[0] = 0 is the theta = -pi endpoint
    for (int i = 1; i < M2; ++i) {
      const double theta = (i - M) * kPi / M;
      const double t = L * std::tan(0.5 * theta);
      f[i] = std::exp(-t * t) * (L * L + t * t);
    }
    for (int n = 1; n <= N; ++n) {
      double acc = 0.0;
      for (int j = 0; j < M2; ++j)
        acc += f[(j + M) % M2] * std::cos(2.0 * kPi * n * j / M2);
      a[n - 1] = acc / M2;
    }
  }
};

cplx faddeeva_weideman(cplx z) {
  static const WeidemanTable tab;
  const cplx lmiz = tab.L - kI * z;
  const cplx Z = (tab.L + kI * z) / lmiz;
  cplx p{};
  for (int m = WeidemanTable::N - 1; m >= 0; --m) p = p * Z + tab.a[m];
  return 2.0 * p / (lmiz * lmiz) + (1.0 / sqrt_pi()) / lmiz;
}

// Laplace continued fraction w = (i/sqrt(pi)) / (z - (1/2)/(z - 1/(z - ...))),
// modified Lentz evaluation. Converges fast for |z| >= 6 (upper half plane).
cplx faddeeva_cf(cplx z) {
  constexpr double tiny = 1e-300;
  cplx f = z, C = z, D{};
  for (int m = 1; m <= 64; ++m) {
    const double am = -0.5 * m;
    D = z + am * D;
    if (std::abs(D) < tiny) D = tiny;
    C = z + am / C;
    if (std::abs(C) < tiny) C = tiny;
    D = 1.0 / D;
    const cplx delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-17)
      return kI / (sqrt_pi() * f);
  }
  throw NoConvergence("Faddeeva continued fraction stalled at z = (" +
                      std::to_string(z.real()) + ", " +
                      std::to_string(z.imag()) + ")");
}

// Im z >= 0 only.
cplx faddeeva_upper(cplx z) {
  return std::abs(z) < 6.0 ? faddeeva_weideman(z) : faddeeva_cf(z);
}

}  // namespace

cplx faddeeva_w(cplx z) {
  if (z.imag() >= 0.0) return faddeeva_upper(z);
  const cplx mz2 = -z * z;
  if (mz2.real() > 700.0)
    throw Overflow("e^{-z^2} overflows: Re(-z^2) = " +
                   std::to_string(mz2.real()));
  return 2.0 * std::exp(mz2) - faddeeva_upper(-z);
}

MoshinskyEval moshinsky_M(cplx k, double t) {
  if (t < 0.0) throw NegativeTime("t = " + std::to_string(t));
  MoshinskyEval out;
  out.k = k;
  out.t = t;
  if (t == 0.0) {
    out.value = 0.5;  // w(0)/2 exactly
    return out;
  }
  const cplx z = -root_i() * k * std::sqrt(t);
  if (z.imag() >= 0.0) {
    out.value = 0.5 * faddeeva_upper(z);
    return out;
  }
  out.branch_used = MoshinskyBranch::reflected;
  // -z^2 = -i k^2 t identically; computing it from k keeps the exponent exact
  // instead of squaring the rounded z.
  const cplx mz2 = -kI * (k * k) * t;
  if (mz2.real() > 700.0)
    throw Overflow("e^{-ik^2 t} overflows: Re = " +
                   std::to_string(mz2.real()));
  out.value = std::exp(mz2) - 0.5 * faddeeva_upper(-z);
  return out;
}

AsymptoticConstants asymptotic_constants() {
  const double s = sqrt_pi();
  return AsymptoticConstants{-root_i() / (2.0 * s),
                             -std::conj(root_i()) / (4.0 * s)};
}

AsymptoticSplit asymptotic_M(cplx k, double t, int order) {
  if (order < 1 || order > 2)
    throw OutOfRange("asymptotic order must be 1 or 2");
  if (!(t > 0.0)) throw NegativeTime("asymptotics need t > 0");
  if (std::norm(k) * t < 4.0)
    throw RegimeViolation("|k|^2 t = " + std::to_string(std::norm(k) * t) +
                          " < 4");
  AsymptoticSplit split;
  if (k.real() > 0.0) {
    const cplx expo = -kI * (k * k) * t;
    if (expo.real() > 700.0)
      throw Overflow("e^{-ik^2 t} overflows: Re = " +
                     std::to_string(expo.real()));
    split.exponential_part = std::exp(expo);
  }
  const AsymptoticConstants c = asymptotic_constants();
  const double st = std::sqrt(t);
  split.power_part = c.A / (k * st);
  if (order == 2) split.power_part += c.B / (k * k * k * t * st);
  return split;
}

}  // namespace gamow

#pragma once

#include <array>
#include <cmath>
#include <utility>

#include "gamow/errors.hpp"
#include "gamow/types.hpp"

namespace gamow {

// 15-point Gauss-Legendre nodes/weights on [-1,1], generated once by Newton
// iteration on the Legendre polynomial (no table copying, fully deterministic).
struct GaussLegendre15 {
  std::array<double, 15> x{};
  std::array<double, 15> w{};

  GaussLegendre15() {
    constexpr int n = 15;
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
        }
        pp = n * (z * p0 - p1) / (z * z - 1.0);
        double dz = p0 / pp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[i] = -z;
      x[n - 1 - i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
      w[n - 1 - i] = w[i];
    }
  }
};

inline const GaussLegendre15& gl15() {
  static const GaussLegendre15 rule;
  return rule;
}

template <typename F>
auto gl15_panel(F&& f, double a, double b) -> decltype(f(a)) {
  const auto& rule = gl15();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  decltype(f(a)) acc{};
  for (int i = 0; i < 15; ++i) acc += rule.w[i] * f(mid + half * rule.x[i]);
  return half * acc;
}

namespace detail {

template <typename F, typename V>
V quad_recurse(F&& f, double a, double b, V whole, double tol, int depth,
               int max_depth) {
  if (depth > max_depth)
    throw QuadratureFailure("adaptive refinement exceeded depth limit " +
                            std::to_string(max_depth));
  const double mid = 0.5 * (a + b);
  const V left = gl15_panel(f, a, mid);
  const V right = gl15_panel(f, mid, b);
  if (std::abs(left + right - whole) <= tol)
    return left + right;
  return quad_recurse(f, a, mid, left, 0.5 * tol, depth + 1, max_depth) +
         quad_recurse(f, mid, b, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace detail

// Adaptive Gauss-Legendre quadrature with absolute tolerance. Works for any
// scalar return type with operator+ and std::abs (double or complex).
template <typename F>
auto quad_adaptive(F&& f, double a, double b, double abs_tol = 1e-12,
                   int max_depth = 30) -> decltype(f(a)) {
  const auto whole = gl15_panel(f, a, b);
  return detail::quad_recurse(f, a, b, whole, abs_tol, 0, max_depth);
}

}  // namespace gamow

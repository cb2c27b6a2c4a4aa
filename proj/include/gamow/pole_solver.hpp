#pragma once

#include <vector>

#include "gamow/shell_model.hpp"
#include "gamow/types.hpp"

namespace gamow {

// One resonance momentum. Fourth-quadrant zeros of F(k) carry n >= 1; their
// mirrors k(-n) = -conj(k(n)) carry n <= -1 and are constructed, not solved.
struct Pole {
  int index_n = 0;
  cplx k{};
  double residual = 0.0;
  int iterations = 0;
};

struct PoleWindow {
  double re_min, re_max, im_min, im_max;
};

PoleWindow make_window(double re_min, double re_max, double im_min,
                       double im_max);

// F(k) = 2ik - lambda(1 - e^{2ikR}); its zeros (except the trivial k=0) are
// the resonance poles.
cplx pole_equation_residual(const ShellModel& model, cplx k);

// dF/dk = 2i + 2i lambda R e^{2ikR}.
cplx pole_equation_derivative(const ShellModel& model, cplx k);

// k0_n = n pi/R - (i/2R) ln(1 + 2 n pi/(lambda R)); the imaginary part
// balances |e^{2ikR}| against 2|k|/lambda.
cplx initial_guess(const ShellModel& model, int n);

// Residual bound is relative: |F(k)| <= tol * max(1, |2ik|).
Pole newton_polish(const ShellModel& model, cplx k0, double tol = 1e-12,
                   int max_iter = 50);

// n = 1..N poles ordered by ascending Re k, residual-verified, duplicate-free,
// and cross-checked against the argument-principle count over a covering
// rectangle (a miscount throws MissedPole).
std::vector<Pole> find_poles(const ShellModel& model, int N);

// Rectangle that contains exactly the n = 1..N family at this model.
PoleWindow covering_window(const ShellModel& model, int N);

// Rectangle around the n-th pole only.
PoleWindow tile_window(const ShellModel& model, int n);

// Input: the n >= 1 family. Output: n = -N..-1, 1..N with k(-n) = -conj(k(n))
// bit-exactly (no re-solving).
std::vector<Pole> extend_symmetric(const std::vector<Pole>& poles);

// Winding number of F over the rectangle boundary, via adaptive refinement of
// the boundary sampling until phase increments are unaliased and the total is
// stable. Raw value must sit within 0.05 of an integer.
int count_poles_argument_principle(const ShellModel& model,
                                   const PoleWindow& window);

}  // namespace gamow

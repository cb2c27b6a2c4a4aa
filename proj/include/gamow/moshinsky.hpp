#pragma once

#include "gamow/errors.hpp"
#include "gamow/types.hpp"

namespace gamow {

// Faddeeva function w(z) = e^{-z^2} erfc(-iz).
// Upper half plane: Weideman rational series for |z| < 6, Laplace continued
// fraction for |z| >= 6. Lower half plane: reflection w(z) = 2e^{-z^2} - w(-z)
// with the exponent computed separately; throws Overflow iff Re(-z^2) > 700.
cplx faddeeva_w(cplx z);

enum class MoshinskyBranch { direct, reflected };

struct MoshinskyEval {
  cplx k{};
  double t = 0.0;
  cplx value{};
  MoshinskyBranch branch_used = MoshinskyBranch::direct;
};

// Time factor M(k,t) = (1/2) e^{y^2} erfc(y), y = -e^{-i pi/4} k sqrt(t),
// evaluated as (1/2) w(-e^{i pi/4} k sqrt(t)). M(k,0) = 1/2 exactly.
MoshinskyEval moshinsky_M(cplx k, double t);

struct AsymptoticConstants {
  cplx A;  // -e^{+i pi/4} / (2 sqrt(pi))
  cplx B;  // -e^{-i pi/4} / (4 sqrt(pi))
};

// Derived from e^{y^2} erfc(y) ~ (1/sqrt(pi)) (1/y - 1/(2y^3) + ...) with the
// y-convention above; numerically certified by the asymptotic-remainder slope.
AsymptoticConstants asymptotic_constants();

struct AsymptoticSplit {
  cplx exponential_part{};  // e^{-ik^2 t} iff Re k > 0, else 0
  cplx power_part{};        // A/(k sqrt(t)) [+ B/(k^3 t^{3/2}) at order 2]
};

// Large-time decomposition, valid in the asymptotic regime |k|^2 t >= 4.
AsymptoticSplit asymptotic_M(cplx k, double t, int order);

}  // namespace gamow

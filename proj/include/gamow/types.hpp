#pragma once

#include <complex>

#include <Eigen/Dense>

namespace gamow {

using cplx = std::complex<double>;
using VecC = Eigen::VectorXcd;
using VecR = Eigen::VectorXd;
using MatC = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// exp(i*pi/4), the unimodular factor mapping momenta into Faddeeva arguments.
inline cplx root_i() { return {0.70710678118654752440, 0.70710678118654752440}; }

inline double sqrt_pi() { return 1.77245385090551602729816748334114518; }

}  // namespace gamow

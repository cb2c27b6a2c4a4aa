#pragma once

#include <vector>

#include "gamow/errors.hpp"
#include "gamow/shell_model.hpp"
#include "gamow/types.hpp"

namespace gamow {

// Uniform radial grid for the Crank-Nicolson reference propagator. The shell
// radius must sit on a node (R/h integer); the absorbing layer occupies
// [L - cap_width, L].
struct Grid1D {
  double L = 20.0;
  double h = 0.005;
  double dt = 2e-4;
  double cap_width = 8.0;
  double cap_strength = 150.0;

  int n_interior() const { return static_cast<int>(L / h + 0.5) - 1; }
  double r_of(int j) const { return h * (j + 1); }  // interior nodes j=0..n-1
};

// Throws PreconditionViolation unless R/h is integral (1e-9), dt <= h,
// cap_width >= 2R, and L >= 10R.
void validate_grid(const ShellModel& model, const Grid1D& grid);

struct WaveField {
  double time = 0.0;
  std::vector<double> r;
  VecC psi;
};

// Cayley-form Crank-Nicolson propagation of the radial equation
// -psi'' + lambda delta(r-R) psi with Dirichlet walls at 0 and L and a quartic
// complex absorbing potential on the outer layer. Sample times must be integer
// multiples of dt (1e-9 relative), else PreconditionViolation: snapping them
// silently would jitter every observable by O(dt). Throws ReflectionDetected
// if max |psi| on [L - R/2, L] at any sample exceeds reflect_threshold.
std::vector<WaveField> propagate_cn(const ShellModel& model,
                                    const InitialState& psi0,
                                    const Grid1D& grid,
                                    const std::vector<double>& sample_times,
                                    double reflect_threshold = 0.05);

struct OracleSample {
  double time = 0.0;
  double P = 0.0;   // trapezoid integral of |psi|^2 over [0, R]
  cplx S{};         // trapezoid <psi_0|psi(t)> over [0, R]
  double norm = 0.0;  // full-grid norm, for unitarity checks with the cap off
};

std::vector<OracleSample> oracle_probabilities(
    const ShellModel& model, const InitialState& psi0, const Grid1D& grid,
    const std::vector<double>& sample_times, double reflect_threshold = 0.05);

// Tridiagonal solve (Thomas algorithm), no pivoting: the Cayley matrix is
// strictly diagonally dominant. Scalar-generic to keep the solver testable on
// real systems.
template <typename Scalar>
Eigen::Vector<Scalar, Eigen::Dynamic> thomas_solve(
    const Eigen::Vector<Scalar, Eigen::Dynamic>& lower,
    const Eigen::Vector<Scalar, Eigen::Dynamic>& diag,
    const Eigen::Vector<Scalar, Eigen::Dynamic>& upper,
    Eigen::Vector<Scalar, Eigen::Dynamic> rhs) {
  const auto n = diag.size();
  if (n == 0 || lower.size() != n - 1 || upper.size() != n - 1 ||
      rhs.size() != n)
    throw SizeMismatch("thomas_solve: band sizes inconsistent");
  Eigen::Vector<Scalar, Eigen::Dynamic> d = std::move(rhs);
  if (n == 1) {
    d[0] /= diag[0];
    return d;
  }
  Eigen::Vector<Scalar, Eigen::Dynamic> c_prime(n - 1);
  Scalar piv = diag[0];
  c_prime[0] = upper[0] / piv;
  d[0] /= piv;
  for (Eigen::Index i = 1; i < n; ++i) {
    piv = diag[i] - lower[i - 1] * c_prime[i - 1];
    if (i < n - 1) c_prime[i] = upper[i] / piv;
    d[i] = (d[i] - lower[i - 1] * d[i - 1]) / piv;
  }
  for (Eigen::Index i = n - 2; i >= 0; --i) d[i] -= c_prime[i] * d[i + 1];
  return d;
}

}  // namespace gamow

#pragma once

#include <vector>

#include "gamow/pole_solver.hpp"
#include "gamow/shell_model.hpp"
#include "gamow/types.hpp"

namespace gamow {

// Interior resonant state u_n(r) = A_n sin(k_n r) with Gamow normalization
//   int_0^R u_n(r)^2 dr + i u_n(R)^2 / (2 k_n) = 1   (square, not |.|^2).
struct ResonantState {
  Pole pole;
  cplx amplitude_A{};
  ShellModel model;
};

// Closed-form normalization A_n^2 = 2(lambda - 2ik)/(R(lambda - 2ik) + 1),
// branch with Re A > 0 (or Im A > 0 if Re A == 0).
ResonantState normalize(const ShellModel& model, const Pole& pole);

// Mirror state: k -> -conj(k), A -> -conj(A), so u_{-n}(r) = conj(u_n(r)).
ResonantState mirror_state(const ResonantState& s);

// u_n(r) = A_n sin(k_n r); r must lie in [0, R].
cplx eval_u_inner(const ResonantState& state, double r);

// The symmetric family n in {-N..-1, 1..N}, stored as the positive half with
// mirrors materialized on demand. Constructing from an explicit list checks
// the mirror pairing and throws AsymmetricFamily when it is broken.
class ResonantFamily {
 public:
  static ResonantFamily build(const ShellModel& model, int N);
  static ResonantFamily from_states(const ShellModel& model,
                                    std::vector<ResonantState> states);

  int half_size() const { return static_cast<int>(pos_.size()); }
  const ShellModel& model() const { return model_; }
  const std::vector<ResonantState>& positive_states() const { return pos_; }

  // n in {-N..-1, 1..N}
  ResonantState state(int n) const;
  cplx k(int n) const;
  cplx u(int n, double r) const;

 private:
  ResonantFamily(ShellModel model, std::vector<ResonantState> pos)
      : model_(model), pos_(std::move(pos)) {}
  ShellModel model_;
  std::vector<ResonantState> pos_;  // n = 1..N ascending
};

// I_rs = int_0^R u_r^*(r) u_s(r) dr, closed sine-product antiderivative with
// analytic limits for both coincident-frequency branches.
cplx overlap_I(const ResonantState& a, const ResonantState& b);

struct OverlapMatrix {
  int half_size_N = 0;
  MatC entries;  // (2N x 2N), index order n = -N..-1, 1..N

  int idx(int n) const { return n < 0 ? n + half_size_N : half_size_N + n - 1; }
  int n_of(int idx) const {
    return idx < half_size_N ? idx - half_size_N : idx - half_size_N + 1;
  }
};

OverlapMatrix build_overlap_matrix(const ResonantFamily& family);

// C_n = int_0^R psi0(r) u_n(r) dr (no conjugation), by adaptive quadrature.
cplx coefficient_C(const ResonantState& state, const InitialState& psi0);

// Box-mode closed form, kept as an independent oracle; the removable
// singularity at k -> m pi / R switches to a series in (q - k).
cplx coefficient_C_closed(const ResonantState& state, const InitialState& psi0);

struct CoefficientSet {
  int half_size_N = 0;
  VecC C;  // same index order as OverlapMatrix

  int idx(int n) const { return n < 0 ? n + half_size_N : half_size_N + n - 1; }
  cplx at(int n) const { return C[idx(n)]; }
};

// Positive-n coefficients by quadrature; mirrors set by conjugation, which is
// exact for real-valued psi0.
CoefficientSet build_coefficients(const ResonantFamily& family,
                                  const InitialState& psi0);

// Partial sum of Eq.-(7)-type closure weight: sum_{0<|n|<=N} u_n(r)u_n(rp)/k_n,
// accumulated pairwise so each (n,-n) pair contributes exactly 2i Im(term).
cplx sum_rule_partial(const ResonantFamily& family, double r, double rp);
cplx sum_rule_partial(const ResonantFamily& family, double r, double rp,
                      int N);

struct FProfile {
  double sup_norm = 0.0;
  std::vector<double> grid;
  std::vector<cplx> values;
};

// f_N(r) = sum_{0<|n|<=N} C_n u_n(r)/k_n on a grid; pairwise accumulation
// keeps Re f identically zero for real psi0.
FProfile f_partial(const CoefficientSet& coeffs, const ResonantFamily& family,
                   const std::vector<double>& grid);
FProfile f_partial(const CoefficientSet& coeffs, const ResonantFamily& family,
                   const std::vector<double>& grid, int N);

struct DeltaValue {
  cplx delta{};
  double term_mass = 0.0;  // sum of |term|, the scale the double sum lives on
};

// Delta_N = sum_rs conj(C_r) C_s I_rs / (conj(k_r) k_s); equals the squared
// L2 norm of f_N when the same truncation is used throughout.
DeltaValue delta_partial(const CoefficientSet& coeffs,
                         const OverlapMatrix& overlaps,
                         const ResonantFamily& family);
DeltaValue delta_partial(const CoefficientSet& coeffs,
                         const OverlapMatrix& overlaps,
                         const ResonantFamily& family, int N);

struct DiagnosticReport {
  int N = 0;
  cplx sum_rule_value{};
  double f_sup_norm = 0.0;
  cplx delta_value{};
  double term_mass = 0.0;
};

// One diagnostics row: sum rule at (r, rp), f sup norm on the grid, and the
// Delta double sum, all at truncation N.
DiagnosticReport build_diagnostic(const ResonantFamily& family,
                                  const CoefficientSet& coeffs,
                                  const OverlapMatrix& overlaps, double r,
                                  double rp, const std::vector<double>& grid,
                                  int N);

// Standard diagnostic grid: 101 uniform points r_j = j R/101 covering [0,R)
// (the expansion domain is the open interval at the shell).
std::vector<double> diagnostic_grid(const ShellModel& model, int points = 101);

}  // namespace gamow

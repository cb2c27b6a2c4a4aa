#include "gamow/resonant_basis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gamow/quadrature.hpp"

namespace gamow {

namespace {

constexpr cplx kI{0.0, 1.0};

// sin(sR)/(2s), analytic at s = 0 (series keeps full precision through the
// removable singularity; threshold leaves the next term below 1e-28).
cplx half_sinc(cplx s, double R) {
  const cplx sR = s * R;
  if (std::abs(sR) < 1e-4) {
    const cplx x2 = sR * sR;
    return 0.5 * R * (1.0 - x2 / 6.0 * (1.0 - x2 / 20.0));
  }
  return std::sin(sR) / (2.0 * s);
}

void check_same_model(const ShellModel& a, const ShellModel& b,
                      const char* where) {
  if (!(a == b)) throw ModelMismatch(where);
}

}  // namespace

ResonantState normalize(const ShellModel& model, const Pole& pole) {
  const cplx F = pole_equation_residual(model, pole.k);
  if (std::abs(F) > 1e-6 * std::max(1.0, 2.0 * std::abs(pole.k)))
    throw ModelMismatch("pole does not satisfy this model's pole equation");
  const cplx denom = model.radius_R * (model.lambda - 2.0 * kI * pole.k) + 1.0;
  if (std::abs(denom) < 1e-12)
    throw DegenerateNormalizer("R(lambda - 2ik) + 1 vanishes");
  const cplx A2 = 2.0 * (model.lambda - 2.0 * kI * pole.k) / denom;
  cplx A = std::sqrt(A2);
  if (A.real() < 0.0 || (A.real() == 0.0 && A.imag() < 0.0)) A = -A;
  return ResonantState{pole, A, model};
}

ResonantState mirror_state(const ResonantState& s) {
  ResonantState m = s;
  m.pole.index_n = -s.pole.index_n;
  m.pole.k = -std::conj(s.pole.k);
  m.amplitude_A = -std::conj(s.amplitude_A);  // keeps u_{-n} = conj(u_n)
  return m;
}

cplx eval_u_inner(const ResonantState& state, double r) {
  if (r < 0.0 || r > state.model.radius_R)
    throw OutOfRange("u_n is interior-only; r = " + std::to_string(r));
  return state.amplitude_A * std::sin(state.pole.k * r);
}

ResonantFamily ResonantFamily::build(const ShellModel& model, int N) {
  const std::vector<Pole> poles = find_poles(model, N);
  std::vector<ResonantState> states;
  states.reserve(N);
  for (const Pole& p : poles) states.push_back(normalize(model, p));
  return ResonantFamily(model, std::move(states));
}

ResonantFamily ResonantFamily::from_states(const ShellModel& model,
                                           std::vector<ResonantState> states) {
  std::sort(states.begin(), states.end(),
            [](const ResonantState& a, const ResonantState& b) {
              return a.pole.index_n < b.pole.index_n;
            });
  const int N = static_cast<int>(states.size()) / 2;
  if (states.size() != 2 * static_cast<size_t>(N) || N == 0)
    throw AsymmetricFamily("family size must be even and nonzero");
  std::vector<ResonantState> pos;
  pos.reserve(N);
  for (int i = 0; i < N; ++i) {
    const ResonantState& neg = states[N - 1 - i];  // index -n
    const ResonantState& p = states[N + i];        // index +n
    check_same_model(model, p.model, "from_states");
    check_same_model(model, neg.model, "from_states");
    if (p.pole.index_n != i + 1 || neg.pole.index_n != -(i + 1))
      throw AsymmetricFamily("index set is not {-N..-1, 1..N}");
    if (neg.pole.k != -std::conj(p.pole.k) ||
        neg.amplitude_A != -std::conj(p.amplitude_A))
      throw AsymmetricFamily("mirror pairing broken at n = " +
                             std::to_string(i + 1));
    pos.push_back(p);
  }
  return ResonantFamily(model, std::move(pos));
}

ResonantState ResonantFamily::state(int n) const {
  if (n == 0 || std::abs(n) > half_size())
    throw OutOfRange("family index n = " + std::to_string(n));
  if (n > 0) return pos_[n - 1];
  return mirror_state(pos_[-n - 1]);
}

cplx ResonantFamily::k(int n) const { return state(n).pole.k; }

cplx ResonantFamily::u(int n, double r) const {
  return eval_u_inner(state(n), r);
}

cplx overlap_I(const ResonantState& a, const ResonantState& b) {
  check_same_model(a.model, b.model, "overlap_I");
  const double R = a.model.radius_R;
  const cplx ka = std::conj(a.pole.k);
  const cplx kb = b.pole.k;
  // int sin(ka r) sin(kb r) dr = sin((ka-kb)R)/(2(ka-kb)) - sin((ka+kb)R)/(2(ka+kb));
  // both differences degenerate somewhere in the family (ka-kb on the diagonal,
  // ka+kb on mirror pairs), hence the series-guarded half_sinc.
  return std::conj(a.amplitude_A) * b.amplitude_A *
         (half_sinc(ka - kb, R) - half_sinc(ka + kb, R));
}

OverlapMatrix build_overlap_matrix(const ResonantFamily& family) {
  const int N = family.half_size();
  OverlapMatrix M;
  M.half_size_N = N;
  M.entries.resize(2 * N, 2 * N);
  for (int r = -N; r <= N; ++r) {
    if (r == 0) continue;
    const ResonantState sr = family.state(r);
    for (int s = -N; s <= N; ++s) {
      if (s == 0) continue;
      M.entries(M.idx(r), M.idx(s)) = overlap_I(sr, family.state(s));
    }
  }
  return M;
}

cplx coefficient_C(const ResonantState& state, const InitialState& psi0) {
  if (psi0.radius_R != state.model.radius_R)
    throw ModelMismatch("initial state radius differs from shell radius");
  const cplx A = state.amplitude_A;
  const cplx k = state.pole.k;
  return quad_adaptive(
      [&](double r) -> cplx { return psi0(r) * A * std::sin(k * r); }, 0.0,
      state.model.radius_R, 1e-12);
}

cplx coefficient_C_closed(const ResonantState& state,
                          const InitialState& psi0) {
  if (psi0.radius_R != state.model.radius_R)
    throw ModelMismatch("initial state radius differs from shell radius");
  const double R = state.model.radius_R;
  const double q = psi0.mode * kPi / R;
  const cplx k = state.pole.k;
  // Same sine-product antiderivative as overlap_I, with psi0 = sqrt(2/R) sin(qr).
  return state.amplitude_A * std::sqrt(2.0 / R) *
         (half_sinc(q - k, R) - half_sinc(q + k, R));
}

CoefficientSet build_coefficients(const ResonantFamily& family,
                                  const InitialState& psi0) {
  const int N = family.half_size();
  CoefficientSet set;
  set.half_size_N = N;
  set.C.resize(2 * N);
  for (int n = 1; n <= N; ++n) {
    const cplx c = coefficient_C(family.state(n), psi0);
    set.C[set.idx(n)] = c;
    set.C[set.idx(-n)] = std::conj(c);  // psi0 real, u_{-n} = conj(u_n)
  }
  return set;
}

cplx sum_rule_partial(const ResonantFamily& family, double r, double rp) {
  return sum_rule_partial(family, r, rp, family.half_size());
}

cplx sum_rule_partial(const ResonantFamily& family, double r, double rp,
                      int N) {
  if (N < 1 || N > family.half_size())
    throw OutOfRange("partial-sum N = " + std::to_string(N));
  cplx acc{};
  for (int n = 1; n <= N; ++n) {
    const ResonantState s = family.state(n);
    const cplx term = eval_u_inner(s, r) * eval_u_inner(s, rp) / s.pole.k;
    // the mirror contributes -conj(term): each pair is exactly 2i Im(term)
    acc += cplx{0.0, 2.0 * term.imag()};
  }
  return acc;
}

FProfile f_partial(const CoefficientSet& coeffs, const ResonantFamily& family,
                   const std::vector<double>& grid) {
  return f_partial(coeffs, family, grid, family.half_size());
}

FProfile f_partial(const CoefficientSet& coeffs, const ResonantFamily& family,
                   const std::vector<double>& grid, int N) {
  if (coeffs.half_size_N != family.half_size())
    throw SizeMismatch("coefficient set does not match family");
  if (N < 1 || N > family.half_size())
    throw OutOfRange("partial-sum N = " + std::to_string(N));
  FProfile out;
  out.grid = grid;
  out.values.resize(grid.size());
  for (size_t j = 0; j < grid.size(); ++j) {
    cplx acc{};
    for (int n = 1; n <= N; ++n) {
      const ResonantState s = family.state(n);
      const cplx term =
          coeffs.at(n) * eval_u_inner(s, grid[j]) / s.pole.k;
      acc += cplx{0.0, 2.0 * term.imag()};  // pair with mirror, as above
    }
    out.values[j] = acc;
    out.sup_norm = std::max(out.sup_norm, std::abs(acc));
  }
  return out;
}

DeltaValue delta_partial(const CoefficientSet& coeffs,
                         const OverlapMatrix& overlaps,
                         const ResonantFamily& family) {
  return delta_partial(coeffs, overlaps, family, family.half_size());
}

DeltaValue delta_partial(const CoefficientSet& coeffs,
                         const OverlapMatrix& overlaps,
                         const ResonantFamily& family, int N) {
  if (coeffs.half_size_N != family.half_size() ||
      overlaps.half_size_N != family.half_size())
    throw SizeMismatch("coefficients/overlaps do not match family");
  if (N < 1 || N > family.half_size())
    throw OutOfRange("partial-sum N = " + std::to_string(N));
  DeltaValue out;
  for (int r = -N; r <= N; ++r) {
    if (r == 0) continue;
    const cplx wr = std::conj(coeffs.at(r) / family.k(r));
    for (int s = -N; s <= N; ++s) {
      if (s == 0) continue;
      const cplx term = wr * (coeffs.at(s) / family.k(s)) *
                        overlaps.entries(overlaps.idx(r), overlaps.idx(s));
      out.delta += term;
      out.term_mass += std::abs(term);
    }
  }
  return out;
}

DiagnosticReport build_diagnostic(const ResonantFamily& family,
                                  const CoefficientSet& coeffs,
                                  const OverlapMatrix& overlaps, double r,
                                  double rp, const std::vector<double>& grid,
                                  int N) {
  DiagnosticReport rep;
  rep.N = N;
  rep.sum_rule_value = sum_rule_partial(family, r, rp, N);
  rep.f_sup_norm = f_partial(coeffs, family, grid, N).sup_norm;
  const DeltaValue d = delta_partial(coeffs, overlaps, family, N);
  rep.delta_value = d.delta;
  rep.term_mass = d.term_mass;
  return rep;
}

std::vector<double> diagnostic_grid(const ShellModel& model, int points) {
  if (points < 2) throw OutOfRange("grid needs at least two points");
  std::vector<double> g(points);
  for (int j = 0; j < points; ++j)
    g[j] = model.radius_R * static_cast<double>(j) / points;
  return g;
}

}  // namespace gamow

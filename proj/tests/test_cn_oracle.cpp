// Crank-Nicolson reference propagator: tridiagonal solver, grid validation,
// unitarity with the absorber off, convergence order, box-limit physics, and
// the reflection/budget guards.
//
// Convergence and box-limit bounds below are empirical for these exact grids
// (measured once on the converged implementation, then pinned with margin);
// they certify second-order self-convergence and agreement with the rigid-box
// analytic solution, not machine-precision identities.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "gamow/cn_oracle.hpp"

using gamow::cplx;
using gamow::Grid1D;
using gamow::make_model;

namespace {

const gamow::ShellModel kModel = make_model(6.0, 1.0);

using VecXc = Eigen::Vector<cplx, Eigen::Dynamic>;
using VecXd = Eigen::Vector<double, Eigen::Dynamic>;

}  // namespace

TEST_CASE("thomas_solve: matches a dense solve on random tridiagonal systems") {
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const int n = 50;
  VecXd lower(n - 1), diag(n), upper(n - 1), rhs(n);
  for (int i = 0; i < n; ++i) {
    diag[i] = 4.0 + uni(rng);  // diagonally dominant
    rhs[i] = uni(rng);
    if (i < n - 1) {
      lower[i] = uni(rng);
      upper[i] = uni(rng);
    }
  }
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    A(i, i) = diag[i];
    if (i < n - 1) {
      A(i + 1, i) = lower[i];
      A(i, i + 1) = upper[i];
    }
  }
  const VecXd x = gamow::thomas_solve<double>(lower, diag, upper, rhs);
  const VecXd ref = A.partialPivLu().solve(rhs);
  CHECK((x - ref).norm() < 1e-12 * ref.norm());
}

TEST_CASE("thomas_solve: complex scalar, 1x1 system, size guards") {
  VecXc lower(1), diag(2), upper(1), rhs(2);
  lower << cplx{0.5, -0.2};
  upper << cplx{-0.3, 0.1};
  diag << cplx{3.0, 1.0}, cplx{2.5, -0.7};
  rhs << cplx{1.0, 0.0}, cplx{0.0, 1.0};
  const VecXc x = gamow::thomas_solve<cplx>(lower, diag, upper, rhs);
  CHECK(std::abs(diag[0] * x[0] + upper[0] * x[1] - rhs[0]) < 1e-14);
  CHECK(std::abs(lower[0] * x[0] + diag[1] * x[1] - rhs[1]) < 1e-14);

  VecXc d1(1), r1(1), e0;
  d1 << cplx{2.0, 0.0};
  r1 << cplx{3.0, 1.0};
  const VecXc x1 = gamow::thomas_solve<cplx>(e0, d1, e0, r1);
  CHECK(std::abs(x1[0] - cplx{1.5, 0.5}) < 1e-15);

  VecXc bad(2);
  bad.setZero();
  CHECK_THROWS_AS(gamow::thomas_solve<cplx>(bad, d1, e0, r1),
                  gamow::SizeMismatch);
  CHECK_THROWS_AS(gamow::thomas_solve<cplx>(e0, VecXc(), e0, VecXc()),
                  gamow::SizeMismatch);
}

TEST_CASE("validate_grid: defaults pass, each precondition fires") {
  CHECK_NOTHROW(gamow::validate_grid(kModel, Grid1D{}));

  Grid1D g{};
  g.h = 0.0052;  // R/h not integral
  CHECK_THROWS_AS(gamow::validate_grid(kModel, g), gamow::PreconditionViolation);

  g = Grid1D{};
  g.dt = 0.01;  // dt > h
  CHECK_THROWS_AS(gamow::validate_grid(kModel, g), gamow::PreconditionViolation);

  g = Grid1D{};
  g.cap_width = 1.0;  // thinner than 2R
  CHECK_THROWS_AS(gamow::validate_grid(kModel, g), gamow::PreconditionViolation);

  g = Grid1D{};
  g.L = 8.0;  // shorter than 10R
  CHECK_THROWS_AS(gamow::validate_grid(kModel, g), gamow::PreconditionViolation);

  g = Grid1D{};
  g.cap_strength = -1.0;
  CHECK_THROWS_AS(gamow::validate_grid(kModel, g), gamow::PreconditionViolation);
}

TEST_CASE("propagate_cn: sample-time preconditions") {
  Grid1D g{};
  g.L = 12.0;
  g.h = 0.01;
  g.dt = 0.005;
  g.cap_width = 3.0;
  g.cap_strength = 40.0;
  const auto psi0 = gamow::initial_state_box_mode(kModel, 1);

  // not a multiple of dt
  CHECK_THROWS_AS(gamow::propagate_cn(kModel, psi0, g, {0.0123}),
                  gamow::PreconditionViolation);
  // not strictly increasing
  CHECK_THROWS_AS(gamow::propagate_cn(kModel, psi0, g, {0.1, 0.1}),
                  gamow::PreconditionViolation);
  CHECK_THROWS_AS(gamow::propagate_cn(kModel, psi0, g, {}),
                  gamow::PreconditionViolation);
  CHECK_THROWS_AS(gamow::propagate_cn(kModel, psi0, g, {-0.05, 0.1}),
                  gamow::NegativeTime);
}

TEST_CASE("propagate_cn: step budget is enforced up front") {
  // 4001 / 2e-4 = 20,005,000 steps > 20,000,000.
  const auto psi0 = gamow::initial_state_box_mode(kModel, 1);
  CHECK_THROWS_AS(gamow::propagate_cn(kModel, psi0, Grid1D{}, {4001.0}),
                  gamow::StabilityBudgetExceeded);
}

TEST_CASE("Cayley step is unitary with the absorber off") {
  Grid1D g{};
  g.L = 12.0;
  g.h = 0.01;
  g.dt = 5e-4;
  g.cap_width = 3.0;
  g.cap_strength = 0.0;
  const auto psi0 = gamow::initial_state_box_mode(kModel, 1);
  // threshold 10: the trailing-edge probe must not fire on a closed box
  const auto samples =
      gamow::oracle_probabilities(kModel, psi0, g, {0.0, 0.5}, 10.0);
  REQUIRE(samples.size() == 2);
  CHECK(samples[0].norm == doctest::Approx(1.0).epsilon(1e-4));
  // 1000 Cayley steps preserve the discrete norm to rounding
  CHECK(std::abs(samples[1].norm - samples[0].norm) < 1e-10);
}

TEST_CASE("reflection guard fires when the absorber is off") {
  Grid1D g{};
  g.L = 20.0;
  g.h = 0.01;
  g.dt = 0.005;
  g.cap_width = 8.0;
  g.cap_strength = 0.0;  // decay pulse sails into the probe window untouched
  const auto psi0 = gamow::initial_state_box_mode(kModel, 1);
  CHECK_THROWS_AS(
      gamow::propagate_cn(kModel, psi0, g, {3.0, 3.2, 3.4, 3.6, 3.8}),
      gamow::ReflectionDetected);
}

TEST_CASE("oracle_probabilities: t = 0 recovers the initial state") {
  Grid1D g{};
  g.L = 12.0;
  g.h = 0.005;
  g.dt = 2e-4;
  g.cap_width = 3.0;
  g.cap_strength = 40.0;
  const auto psi0 = gamow::initial_state_box_mode(kModel, 1);
  const auto s = gamow::oracle_probabilities(kModel, psi0, g, {0.0});
  REQUIRE(s.size() == 1);
  CHECK(s[0].P == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(s[0].S.real() == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(std::abs(s[0].S.imag()) < 1e-12);
  CHECK(s[0].norm == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("box limit: huge shell strength confines the mode") {
  // lambda = 1e6 is numerically a closed box: psi(r,t) on [0,R] should match
  // sqrt(2) sin(pi r) e^{-i pi^2 t} to the discretization error.
  const auto box = make_model(1e6, 1.0);
  Grid1D g{};
  g.L = 12.0;
  g.h = 0.005;
  g.dt = 2e-4;
  g.cap_width = 3.0;
  g.cap_strength = 40.0;
  const auto psi0 = gamow::initial_state_box_mode(box, 1);
  const double t = 1.6;
  const auto fields = gamow::propagate_cn(box, psi0, g, {t});
  REQUIRE(fields.size() == 1);
  double num = 0.0, den = 0.0;
  const cplx phase = std::exp(cplx{0.0, -gamow::kPi * gamow::kPi * t});
  for (Eigen::Index j = 0; j < fields[0].psi.size(); ++j) {
    const double r = fields[0].r[static_cast<size_t>(j)];
    if (r > 1.0) break;
    const cplx exact = std::sqrt(2.0) * std::sin(gamow::kPi * r) * phase;
    num += std::norm(fields[0].psi[j] - exact);
    den += std::norm(exact);
  }
  CHECK(den > 0.0);
  CHECK(std::sqrt(num / den) < 1.5e-3);
}

TEST_CASE("self-convergence: halving (h, dt) shrinks the P error ~4x") {
  const auto psi0 = gamow::initial_state_box_mode(kModel, 1);
  const double t = 0.8;
  auto run = [&](double h) {
    Grid1D g{};
    g.L = 12.0;
    g.h = h;
    g.dt = h;  // lockstep halving keeps both error terms in play
    g.cap_width = 3.0;
    g.cap_strength = 40.0;
    return gamow::oracle_probabilities(kModel, psi0, g, {t})[0].P;
  };
  // h = 0.02 is still pre-asymptotic (measured ratio 2.94); one halving
  // deeper the scheme shows its clean second order (measured 3.96).
  const double p1 = run(0.01);
  const double p2 = run(0.005);
  const double p3 = run(0.0025);
  const double ratio = (p1 - p2) / (p2 - p3);
  CHECK(ratio > 3.0);
  CHECK(ratio < 5.0);
}

TEST_CASE("domain doubling leaves interior probabilities unchanged") {
  const auto psi0 = gamow::initial_state_box_mode(kModel, 1);
  const std::vector<double> times{0.8, 1.6, 2.4, 3.2};
  auto run = [&](double L) {
    Grid1D g{};
    g.L = L;
    g.h = 0.01;
    g.dt = 0.005;
    g.cap_width = 8.0;
    g.cap_strength = 150.0;
    return gamow::oracle_probabilities(kModel, psi0, g, times);
  };
  const auto a = run(20.0);
  const auto b = run(40.0);
  for (size_t i = 0; i < times.size(); ++i)
    CHECK(std::abs(a[i].P - b[i].P) < 1e-6);
}

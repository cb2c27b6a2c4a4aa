// Delta-shell model and initial-state tests.
//
// Units: hbar = 2m = 1. The initial state is the box mode
// psi0(r) = sqrt(2/R) sin(m pi r / R) on (0, R), zero outside.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gamow/quadrature.hpp"
#include "gamow/shell_model.hpp"

using gamow::make_model;
using gamow::initial_state_box_mode;

TEST_CASE("make_model validates its parameters") {
  CHECK_NOTHROW(make_model(6.0, 1.0));
  CHECK_THROWS_AS(make_model(0.0, 1.0), gamow::NonPositiveStrength);
  CHECK_THROWS_AS(make_model(-2.0, 1.0), gamow::NonPositiveStrength);
  CHECK_THROWS_AS(make_model(6.0, 0.0), gamow::NonPositiveRadius);
  CHECK_THROWS_AS(make_model(6.0, -1.0), gamow::NonPositiveRadius);
}

TEST_CASE("model equality compares both parameters") {
  CHECK(make_model(6.0, 1.0) == make_model(6.0, 1.0));
  CHECK_FALSE(make_model(6.0, 1.0) == make_model(5.0, 1.0));
  CHECK_FALSE(make_model(6.0, 1.0) == make_model(6.0, 2.0));
}

TEST_CASE("box mode: values, support, normalization") {
  const auto model = make_model(6.0, 1.0);
  const auto psi0 = initial_state_box_mode(model, 1);

  CHECK(psi0(0.5) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(psi0(0.0) == 0.0);
  CHECK(psi0(1.0) == 0.0);
  CHECK(psi0(-0.1) == 0.0);
  CHECK(psi0(1.7) == 0.0);

  const double norm = gamow::quad_adaptive(
      [&](double r) { return psi0(r) * psi0(r); }, 0.0, 1.0, 1e-13);
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("box mode: higher modes and radius scaling") {
  const auto model = make_model(6.0, 2.0);
  const auto psi3 = initial_state_box_mode(model, 3);
  // sqrt(2/R) sin(3 pi r / R) at r = R/2 is -sqrt(2/R) sin(pi/2) ... sign check:
  // sin(3 pi/2) = -1.
  CHECK(psi3(1.0) == doctest::Approx(-1.0).epsilon(1e-15));
  const double norm = gamow::quad_adaptive(
      [&](double r) { return psi3(r) * psi3(r); }, 0.0, 2.0, 1e-13);
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("box mode rejects nonpositive mode index") {
  const auto model = make_model(6.0, 1.0);
  CHECK_THROWS_AS(initial_state_box_mode(model, 0), gamow::InvalidMode);
  CHECK_THROWS_AS(initial_state_box_mode(model, -2), gamow::InvalidMode);
}

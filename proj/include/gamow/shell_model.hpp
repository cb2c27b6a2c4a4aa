#pragma once

#include <cmath>

#include "gamow/errors.hpp"
#include "gamow/types.hpp"

namespace gamow {

// s-wave delta-shell system V(r) = lambda * delta(r - R) on the half line with
// psi(0) = 0, in units hbar = 2m = 1 (dispersion E = k^2).
struct ShellModel {
  double lambda = 0.0;   // potential strength, 1/length
  double radius_R = 0.0; // shell radius, length

  friend bool operator==(const ShellModel&, const ShellModel&) = default;
};

ShellModel make_model(double lambda, double radius_R);

// Normalized initial state confined to [0,R]: sqrt(2/R) sin(m pi r / R).
struct InitialState {
  int mode = 1;
  double radius_R = 1.0;

  double operator()(double r) const {
    if (r <= 0.0 || r >= radius_R) return 0.0;
    return std::sqrt(2.0 / radius_R) * std::sin(mode * kPi * r / radius_R);
  }
};

InitialState initial_state_box_mode(const ShellModel& model, int m);

}  // namespace gamow

#pragma once

#include <stdexcept>
#include <string>

namespace gamow {

// Common base so the CLI can map any domain failure to a single exit code.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define GAMOW_DEFINE_ERROR(NAME)                                      \
  struct NAME : Error {                                               \
    explicit NAME(const std::string& msg) : Error(#NAME ": " + msg) {} \
  }

// shell_model
GAMOW_DEFINE_ERROR(NonPositiveStrength);
GAMOW_DEFINE_ERROR(NonPositiveRadius);
GAMOW_DEFINE_ERROR(InvalidMode);
GAMOW_DEFINE_ERROR(OutOfRange);

// pole_solver
GAMOW_DEFINE_ERROR(NoConvergence);
GAMOW_DEFINE_ERROR(DerivativeVanished);
GAMOW_DEFINE_ERROR(ConvergedToTrivialRoot);
GAMOW_DEFINE_ERROR(MissedPole);
GAMOW_DEFINE_ERROR(DuplicatePole);
GAMOW_DEFINE_ERROR(BoundaryTooCloseToZero);
GAMOW_DEFINE_ERROR(NonIntegerWinding);

// resonant_basis
GAMOW_DEFINE_ERROR(DegenerateNormalizer);
GAMOW_DEFINE_ERROR(ModelMismatch);
GAMOW_DEFINE_ERROR(QuadratureFailure);
GAMOW_DEFINE_ERROR(SizeMismatch);
GAMOW_DEFINE_ERROR(AsymmetricFamily);

// moshinsky
GAMOW_DEFINE_ERROR(NegativeTime);
GAMOW_DEFINE_ERROR(Overflow);
GAMOW_DEFINE_ERROR(RegimeViolation);

// propagation
GAMOW_DEFINE_ERROR(NonPositiveSample);
GAMOW_DEFINE_ERROR(WindowTooSmall);
GAMOW_DEFINE_ERROR(PathDisagreement);

// cn_oracle
GAMOW_DEFINE_ERROR(StabilityBudgetExceeded);
GAMOW_DEFINE_ERROR(ReflectionDetected);

// generic contract violations (documented preconditions)
GAMOW_DEFINE_ERROR(PreconditionViolation);

// cli / config (maps to exit code 2)
GAMOW_DEFINE_ERROR(ConfigError);

#undef GAMOW_DEFINE_ERROR

}  // namespace gamow

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace reeb {

enum class ErrorKind {
  InvalidBody,
  ZeroArgument,
  NewtonDivergence,
  EnergyDrift,
  OffHypersurface,
  SymplecticityLoss,
  ShootingDivergence,
  NonPositiveDefinite,
  UnresolvedCrossing,
  NotClosedOrbit,
  NoPositiveActionStart,
  NonConvergence,
  ResidualTooLarge,
  LadderViolation,
  UnsupportedBody,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Carries the diagnostics of the best restart so callers can report them.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, double best_value, double gradient_norm)
      : Error(ErrorKind::NonConvergence, what),
        best_value_(best_value),
        gradient_norm_(gradient_norm) {}

  double best_value() const noexcept { return best_value_; }
  double gradient_norm() const noexcept { return gradient_norm_; }

 private:
  double best_value_;
  double gradient_norm_;
};

}  // namespace reeb

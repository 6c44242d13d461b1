#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace epmono {

enum class ErrorKind {
  NonFinite,
  InvalidArgument,
  StepTooLarge,
  PhaseStepTooLarge,
  ZeroArgument,
  DegeneratePoint,
  IndeterminatePhase,
  NotUnit,
  StepRejected,
  PoleUnavoidable,
  NotClosed,
  OverlapVanishes,
  DegeneracyOnLoop,
  OnSingularSet,
  OutsideConvergence,
  SingularContour,
  SingularSurface,
  UndefinedAtPulse,
  NoPulse,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Domain failure raised by the numerical modules. The kind is stable and
/// machine-checkable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace epmono

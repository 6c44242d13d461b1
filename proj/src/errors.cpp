#include "epmono/errors.hpp"

namespace epmono {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::PhaseStepTooLarge: return "PhaseStepTooLarge";
    case ErrorKind::ZeroArgument: return "ZeroArgument";
    case ErrorKind::DegeneratePoint: return "DegeneratePoint";
    case ErrorKind::IndeterminatePhase: return "IndeterminatePhase";
    case ErrorKind::NotUnit: return "NotUnit";
    case ErrorKind::StepRejected: return "StepRejected";
    case ErrorKind::PoleUnavoidable: return "PoleUnavoidable";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::OverlapVanishes: return "OverlapVanishes";
    case ErrorKind::DegeneracyOnLoop: return "DegeneracyOnLoop";
    case ErrorKind::OnSingularSet: return "OnSingularSet";
    case ErrorKind::OutsideConvergence: return "OutsideConvergence";
    case ErrorKind::SingularContour: return "SingularContour";
    case ErrorKind::SingularSurface: return "SingularSurface";
    case ErrorKind::UndefinedAtPulse: return "UndefinedAtPulse";
    case ErrorKind::NoPulse: return "NoPulse";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace epmono

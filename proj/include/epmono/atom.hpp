#pragma once

// Driven dissipative two-level atom in the rotating-wave approximation.
// Rotating frame: H_r = ½[[Δ−ω−iδ, ρ], [ρ, −Δ+ω+iδ]] with ρ = 2V₀; the overall
// decay λ enters only as the amplitude factor e^{−λt/2} of the lab frame.
// Throughout, Z = Δ − ω − iδ and Ω = (ρ² + Z²)^{1/2}.

#include <vector>

#include "epmono/gphase.hpp"

namespace epmono {

struct AtomParams {
  double Delta = 0.0;   // detuning ω₀ − ν
  double delta = 0.0;   // (γ_a − γ_b)/2
  double lambda = 0.0;  // (γ_a + γ_b)/2
  double omega = 0.0;   // drive sweep rate
  double V0 = 0.0;      // coupling, ρ = 2V₀

  double rho() const noexcept { return 2.0 * V0; }
  Complex z() const noexcept { return {Delta - omega, -delta}; }
  Complex omega_squared() const noexcept { return rho() * rho() + z() * z(); }
};

/// Checks λ ≥ δ ≥ 0, V₀ ≥ 0 and finiteness; InvalidArgument otherwise.
void validate(const AtomParams& p);

struct RegimeReport {
  Regime regime = Regime::Generic;
  double omega0 = 0.0;  // |ρ² − δ²|^{1/2} at resonance
  MonopoleKind monopole_kind = MonopoleKind::NotApplicable;
  bool resonant = false;  // Δ = ω
};

/// EP when |ρ − δ| < 1e-9·max(ρ, δ) at Δ = ω; off resonance the regime of Ω·Ω.
RegimeReport regime_report(const AtomParams& p);

Hamiltonian2 rotating_hamiltonian(const AtomParams& p);

/// ½[[−iλ+Δ−iδ, ρe^{−iωt}], [ρe^{iωt}, −iλ−Δ+iδ]].
Hamiltonian2 lab_hamiltonian(const AtomParams& p, double t);

/// Ω'(t) = (ρ cos ωt, ρ sin ωt, Δ − iδ) of dn/dt = Ω' × n.
ComplexTriple lab_omega(const AtomParams& p, double t);

/// Rotating-frame amplitudes C(t) = U_r(t) C(0).
Ket evolve_driven(const AtomParams& p, const Ket& c0, double t);

/// Lab-frame state from rotating amplitudes:
/// (C₁e^{−i(ω−iλ)t/2}, C₂e^{i(ω+iλ)t/2}).
Ket lab_state(const AtomParams& p, const Ket& c, double t);

/// Bloch vector of the driven atom: frame rotation about z by ωt applied to
/// the rotating-frame evolution of n(0).
ComplexTriple bloch_driven(const AtomParams& p, const ComplexTriple& n0, double t);

/// Periodic solutions |u±(t)>, <ũ±(t)| whose Bloch vectors are
/// ±(sin χ cos ωt, sin χ sin ωt, cos χ). DegeneratePoint at Ω = 0.
AdjointPair cyclic_state(const AtomParams& p, Branch branch, double t);

/// γ± = −π(1 ∓ cos χ), cos χ = Z/Ω.
Complex cyclic_phase(const AtomParams& p, Branch branch);

/// γ₋ + 2π, the branch that reduces to the adiabatic phase.
Complex aa_phase(const AtomParams& p);

/// π(1 − (Δ−iδ)/√(ρ² + (Δ−iδ)²)).
Complex adiabatic_limit_phase(const AtomParams& p);

/// Geometric phase for n(0) = (0,0,1):
///   Zt/2 − (ωρ²/2)(Ωt − sin Ωt)/Ω³ + (i/2) ln[(1 + iZ tan(Ωt/2)/Ω)/(1 − iZ tan(Ωt/2)/Ω)],
/// evaluated through functions of Ω² only, so Ω → 0 needs no special case.
/// Principal logarithm. UndefinedAtPulse where the log argument is 0 or ∞.
Complex noncyclic_phase(const AtomParams& p, double t);

enum class ApproachAxis { Rho, Detuning };

/// One-sided limit of noncyclic_phase as ρ (or Δ) approaches its value from
/// side = +1 / −1: offsets 1e-6 and 1e-7, linear Richardson extrapolation.
Complex noncyclic_side_limit(const AtomParams& p, double t, ApproachAxis axis, int side);

struct TunnelingProbabilities {
  double up_up = 0.0;
  double down_up = 0.0;
};

/// P↑↑, P↓↑ from |u(0)> = |u↑>. At resonance the regime closed forms are
/// used, otherwise the general amplitudes.
TunnelingProbabilities tunneling_probabilities(const AtomParams& p, double t);

/// P↑↑ − P↓↑ at resonance (InvalidArgument off resonance).
double rabi_function(const AtomParams& p, double t);

/// Same closed forms driven directly by (Ω₀, δ, λ) and the regime, without
/// requiring a real coupling ρ behind them.
double rabi_closed(Regime regime, double omega0, double delta, double lambda, double t);

struct PulseJump {
  double time;
  double step;  // jump of Re γ: ±π/2
};

struct PulseTimes {
  Regime regime = Regime::Coherent;
  std::vector<PulseJump> jumps;  // ascending, up to t_max
  double duration = 0.0;         // t_{n+1}⁻ − t_n⁺; +∞ when there is one jump
};

/// Jump times of Re γ at resonance:
///   coherent    t_n = (2/Ω₀)(πn ± arctan(Ω₀/δ)),
///   incoherent  t₀ = (2/Ω₀) artanh(Ω₀/δ),
///   EP          t₀ = 2/δ.
/// NoPulse when δ = 0.
PulseTimes phase_pulse_times(const AtomParams& p, double t_max);

/// Resonant form of noncyclic_phase:
///   coherent   −ω(δ²+Ω₀²)(Ω₀t − sin Ω₀t)/(2Ω₀³) − iδt/2 + (i/2) ln[(Ω₀ + δ tan(Ω₀t/2))/(Ω₀ − δ tan(Ω₀t/2))]
///   incoherent −ω(δ²−Ω₀²)(sinh Ω₀t − Ω₀t)/(2Ω₀³) − iδt/2 + (i/2) ln[(Ω₀ + δ tanh(Ω₀t/2))/(Ω₀ − δ tanh(Ω₀t/2))]
///   EP         −ωδ²t³/12 − iδt/2 + (i/2) ln[(1 + δt/2)/(1 − δt/2)]
/// UndefinedAtPulse at a jump time.
Complex coherent_incoherent_phase(const AtomParams& p, double t);

}  // namespace epmono

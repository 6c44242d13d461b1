#pragma once

// Time evolution for H = (λ/2)·I + (1/2)·Ω·σ: closed-form propagator and
// Bloch-vector forms, plus a fixed-step RK4 integrator used as the
// independent reference for every closed form.

#include <functional>
#include <string>
#include <vector>

#include "epmono/ham2.hpp"

namespace epmono {

struct AdjointPair {
  Ket ket;
  Bra bra;
};

inline Complex overlap(const AdjointPair& p) noexcept { return pair(p.bra, p.ket); }
inline ComplexTriple bloch_vector(const AdjointPair& p) noexcept { return bloch_vector(p.bra, p.ket); }

enum class Regime { Coherent, Incoherent, ExceptionalPoint, Generic };

const char* to_string(Regime r) noexcept;

struct RegimeTag {
  Regime regime = Regime::Generic;
  double omega0 = 0.0;  // |Ω·Ω|^{1/2}
};

/// Coherent iff Ω·Ω real positive, Incoherent iff real negative,
/// ExceptionalPoint iff Ω·Ω ≈ 0; Generic for complex Ω·Ω.
RegimeTag regime_of(const ComplexTriple& omega) noexcept;
inline RegimeTag regime_of(const Hamiltonian2& h) noexcept { return regime_of(h.omega()); }

/// cos(Ωτ), sin(Ωτ)/Ω and (1 - cos Ωτ)/Ω² as functions of w = Ω·Ω. All are
/// even in Ω, so no square-root branch enters; a 4-term series is used when
/// |w|τ² < 1e-8.
struct EvenFunctions {
  Complex cos, sinc, versc;
};
EvenFunctions even_functions(Complex w, double tau);

ComplexMat2 propagator(const Hamiltonian2& h, double t);
ComplexMat2 propagator_inverse(const Hamiltonian2& h, double t);

AdjointPair evolve_pair(const Hamiltonian2& h, const AdjointPair& initial, double t);

/// n(t) for constant Ω given n(0) = n_i with n_i·n_i = 1.
ComplexTriple bloch_closed_form(const Hamiltonian2& h, const ComplexTriple& n_i, double t);

struct TransitionAmplitudes {
  Complex t_ii, t_fi;
};

/// T_ii = <ũ_i|U|u_i>, T_fi = <ũ_f|U|u_i> from n_i = <ũ_i|σ|u_i>,
/// n_fi = <ũ_f|σ|u_i> and cos θ_fi = <ũ_f|u_i>.
TransitionAmplitudes transition_amplitudes(const Hamiltonian2& h, const ComplexTriple& n_i,
                                           const ComplexTriple& n_fi, Complex cos_theta_fi, double t);

struct Trajectory {
  std::vector<double> times;
  std::vector<AdjointPair> pairs;  // empty for Bloch-only trajectories
  std::vector<ComplexTriple> bloch;
  std::string integrator;
  double step = 0.0;
  std::string parameters;
};

using HamiltonianFn = std::function<Hamiltonian2(double)>;
using OmegaFn = std::function<ComplexTriple(double)>;

struct TimeSpan {
  double start = 0.0, end = 0.0;
};

/// RK4 on i d|u>/dt = H|u> and -i d<ũ|/dt = <ũ|H> together. The step is
/// shrunk to divide the span evenly; every `record_every`-th sample is kept
/// (the end point always is).
Trajectory integrate_schrodinger(const HamiltonianFn& h, const AdjointPair& initial, TimeSpan span,
                                 double step, int record_every = 1);

/// RK4 on dn/dt = Ω(t) × n.
Trajectory integrate_bloch(const OmegaFn& omega, const ComplexTriple& n_i, TimeSpan span, double step,
                           int record_every = 1);

}  // namespace epmono

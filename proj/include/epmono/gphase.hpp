#pragma once

// Complex phases of non-Hermitian evolution: the total/dynamical/geometric
// decomposition, the Bloch-sphere form of the non-cyclic geometric phase,
// the cyclic Aharonov-Anandan phase, the adiabatic Berry phase, and the
// adiabaticity diagnostic.
//
// Phases coming out of logarithms are only defined modulo π once the states
// are bi-orthonormalised; compare with phase_distance_mod_pi.

#include <optional>
#include <vector>

#include "epmono/evolve.hpp"

namespace epmono {

struct PhaseDecomposition {
  Complex total, dynamical, geometric;
};

/// -∫<ũ|H|u> dt on the trajectory grid.
Complex dynamical_phase(const Trajectory& traj, const HamiltonianFn& h);

/// total = (i/2) ln(<ũ(t)|u(0)> / <ũ(0)|u(t)>), dynamical = -i∫<ũ|u̇> dt,
/// geometric = total - dynamical. u̇ comes from -iH|u> when h is given and
/// from finite differences otherwise (e.g. for gauge-transformed states).
PhaseDecomposition geometric_phase_from_definition(const Trajectory& traj,
                                                   const HamiltonianFn* h = nullptr);

/// Geometric phase from the Bloch curve alone:
///   -(1/2)∫(n1 ṅ2 - n2 ṅ1)/(1 + n3) dt + endpoint term,
/// the endpoint term continued in the end time. Returns the value at every
/// trajectory sample.
std::vector<Complex> geometric_phase_noncyclic_series(const Trajectory& traj);
Complex geometric_phase_noncyclic(const Trajectory& traj);

/// -(1/2)∮(1 - cos α) dβ over a closed, uniformly parametrised Bloch loop
/// whose first and last samples coincide. Evaluated in the given frame unless
/// the loop comes within 1e-3 of n3 = -1; the rotated frame then used agrees
/// only modulo 2π.
Complex geometric_phase_cyclic(const std::vector<ComplexTriple>& loop);

/// Closed-form geometric phase for constant H starting from n_i:
///   (t/2)(n_i·Ω) + (i/2) ln[(1 + i cos χ tan(Ωt/2)) / (1 - i cos χ tan(Ωt/2))].
/// Principal logarithm.
Complex geometric_phase_constant(const Hamiltonian2& h, const ComplexTriple& n_i, double t);

struct ParameterLoop {
  std::function<Hamiltonian2(double)> sampler;  // s ∈ [0, 1]
  int samples = 512;
};

enum class Branch { Plus, Minus };

/// i∮<ũ_n|du_n> for the eigenbranch λ± followed continuously around the
/// loop, from the gauge-invariant overlap product with one Richardson step.
Complex adiabatic_berry_phase(const ParameterLoop& loop, Branch branch);

/// max_n Σ_{m≠n} |<ũ_m|∂H/∂t|u_n> / (E_m - E_n)²| with central differences.
double adiabaticity_criterion(const HamiltonianFn& h, double t, double fd_step = 1e-5);

}  // namespace epmono

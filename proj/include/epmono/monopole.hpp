#pragma once

// Fictitious monopole geometry over the real (x, y, z) parameter space:
// connection, field, scalar potential, contour and flux integrals, multipole
// expansion and level-surface grids.
//
// Model vectors 𝐑 = (X, Y, Z) by kind:
//   Dirac                    (x, y, z)
//   Complex, ComplexDirac    (x, y, z − iε)
//   One/TwoSheetedHyperbolic (x, y, iz),  R² = x² + y² − z²

#include <functional>
#include <optional>
#include <vector>

#include "epmono/calg.hpp"
#include "epmono/ham2.hpp"

namespace epmono {

struct MonopoleModel {
  MonopoleKind kind = MonopoleKind::Dirac;
  Complex q{0.5, 0.0};
  double epsilon = 0.0;
};

bool is_hyperbolic(MonopoleKind kind) noexcept;

/// 𝐑 for a real-parameter point (complex points are accepted and mapped the same way).
ComplexTriple monopole_vector(const ComplexTriple& point, const MonopoleModel& model);

enum class Chart { North, South, UpperSheet, LowerSheet };
const char* to_string(Chart c) noexcept;

struct ConnectionSample {
  ComplexTriple a;  // Cartesian components A_x, A_y, A_z
  Chart chart = Chart::North;
};

/// A = q(X dY − Y dX)/(R(R+Z)) (north) or −q(X dY − Y dX)/(R(R−Z)) (south).
/// Without an explicit chart the north one is used unless the point lies on
/// its string. Hyperbolic models always use the principal form, which yields
/// A⁺ on z > 0 and A⁻ on z < 0.
ConnectionSample connection(const ComplexTriple& point, const MonopoleModel& model,
                            std::optional<Chart> chart = std::nullopt);

/// Coefficient of dφ: x A_y − y A_x.
Complex connection_phi(const ComplexTriple& point, const MonopoleModel& model,
                       std::optional<Chart> chart = std::nullopt);

struct FieldSample {
  ComplexTriple point;
  ComplexTriple a;
  Chart chart = Chart::North;
  ComplexTriple b;
  Complex phi;
  BranchState branch;
};

/// B = q𝐑/R³, Φ = q/R; hyperbolic: B = iq(x,y,z)/R³, Φ = −iq/R.
/// An initialised branch continues R from its previous value.
FieldSample field_and_potential(const ComplexTriple& point, const MonopoleModel& model,
                                BranchState branch = BranchState::fresh());

/// q Σ_{l≤L} (iε)^l P_l(cos α) / r^{l+1}.
Complex multipole_potential(double r, double alpha, const MonopoleModel& model, int order);

/// Closed loop s ∈ [0, 2π) with its tangent dr/ds.
struct Contour {
  std::function<ComplexTriple(double)> point;
  std::function<ComplexTriple(double)> tangent;
};

/// Horizontal circle of cylindrical radius rho at height z.
Contour circle_contour(double rho, double z);

/// ∮A by periodic trapezoid with doubling.
Complex contour_phase(const Contour& contour, const MonopoleModel& model,
                      std::optional<Chart> chart = std::nullopt, double tol = 1e-10,
                      std::size_t max_samples = std::size_t{1} << 20);

/// Closed form of ∮A around a horizontal circle: 2πq(1 − Z/R).
Complex circle_phase_closed(double rho, double z, const MonopoleModel& model);

struct FluxResult {
  Complex loop;
  Complex surface;
};

/// Cap of the sphere |p| = r with polar angle ≤ alpha, bounded by its latitude
/// circle. Surface term integrates B·n dS, loop term is ∮A on the rim.
FluxResult flux_solid_angle(double r, double alpha, const MonopoleModel& model, double tol = 1e-10);

/// ∯ B·n dS over the sphere |p| = r.
Complex sphere_flux(double r, const MonopoleModel& model, double tol = 1e-10);

/// Complex solid angle of the latitude-circle cap: 2π(1 − Z/R) on the rim.
Complex complex_solid_angle(double r, double alpha, double epsilon);

/// One-sheeted hyperboloid x²+y²−z² = R², band θ₁ ≤ θ ≤ θ₂ with
/// (x, y, z) = (R cosh θ cos φ, R cosh θ sin φ, R sinh θ).
FluxResult hyperboloid_band_flux(double radius, double theta1, double theta2, const MonopoleModel& model,
                                 double tol = 1e-10);

/// ∮A⁺ − ∮A⁻ around the circles at hyperbolic angle θ on the two sheets of
/// z² − x² − y² = R̃².
Complex two_sheeted_chart_mismatch(double radius, double theta, const MonopoleModel& model);

struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  int count = 2;
  double at(int i) const noexcept;
};

struct LevelGridSpec {
  GridAxis x, y, z;
};

struct GridCell {
  double x, y, z;
  Complex phi;
  bool singular;
};

/// Φ over a rectangular grid, x outermost and z innermost. Cells within
/// 1e-6·scale² of R² = 0 are flagged and carry Φ = 0.
std::vector<GridCell> level_surface_grid(const MonopoleModel& model, const LevelGridSpec& spec);

}  // namespace epmono

#pragma once

// Generic non-Hermitian 2x2 Hamiltonian H = λ₀·I + R·σ with R = (X, Y, Z)
// complex. The evolution formulas prefer H = (λ/2)·I + (1/2)·Ω·σ, so both
// views are exposed: omega() = 2R, trace() = 2λ₀.

#include <optional>

#include "epmono/calg.hpp"

namespace epmono {

class Hamiltonian2 {
 public:
  Hamiltonian2() : Hamiltonian2(Complex{}, ComplexTriple{}) {}

  static Hamiltonian2 from_block(Complex lambda0, const ComplexTriple& r) {
    return Hamiltonian2(lambda0, r);
  }
  /// H = (trace/2)·I + (1/2)·Ω·σ.
  static Hamiltonian2 from_omega(Complex trace, const ComplexTriple& omega) {
    return Hamiltonian2(0.5 * trace, 0.5 * omega);
  }
  static Hamiltonian2 from_matrix(const ComplexMat2& m);

  Complex lambda0() const noexcept { return lambda0_; }
  const ComplexTriple& r() const noexcept { return r_; }
  ComplexTriple omega() const noexcept { return 2.0 * r_; }
  Complex trace() const noexcept { return 2.0 * lambda0_; }
  const ComplexMat2& matrix() const noexcept { return mat_; }

 private:
  Hamiltonian2(Complex lambda0, const ComplexTriple& r);

  Complex lambda0_;
  ComplexTriple r_;
  ComplexMat2 mat_;
};

struct BlockParams {
  Complex lambda0, x, y, z;
};

/// Reduces a 2x2 block (a11, a12; a21, a22) to (λ₀, X, Y, Z).
BlockParams project_block(Complex a11, Complex a12, Complex a21, Complex a22) noexcept;

enum class DegeneracyLabel { NonDegenerate, DiabolicPoint, ExceptionalPoint };

enum class MonopoleKind {
  Dirac,
  Complex,
  ComplexDirac,
  OneSheetedHyperbolic,
  TwoSheetedHyperbolic,
  NotApplicable,
};

struct DegeneracyClass {
  DegeneracyLabel label = DegeneracyLabel::NonDegenerate;
  MonopoleKind monopole_kind = MonopoleKind::NotApplicable;
};

const char* to_string(DegeneracyLabel label) noexcept;
const char* to_string(MonopoleKind kind) noexcept;

/// Real parametrisation R = (x, y, z - iε) of the dissipative models.
struct ModelTag {
  double x = 0, y = 0, z = 0, epsilon = 0;
  bool epsilon_constant = false;
};

ComplexTriple model_vector(const ModelTag& tag) noexcept;

inline constexpr double kDegeneracyRadius = 1e-9;
inline constexpr double kDiabolicRadius = 1e-12;

DegeneracyClass classify(const ComplexTriple& r, std::optional<ModelTag> tag = std::nullopt) noexcept;

/// Raised by eigensystem/spherical_angles at a degeneracy.
class DegeneratePointError : public Error {
 public:
  DegeneratePointError(DegeneracyClass cls, const std::string& what)
      : Error(ErrorKind::DegeneratePoint, what), cls_(cls) {}
  DegeneracyClass degeneracy() const noexcept { return cls_; }

 private:
  DegeneracyClass cls_;
};

struct SphericalAngles {
  Complex R, theta, phi;
  // Angles refer to the frame with x and z exchanged, R' = (Z, -Y, X); set
  // when φ is indeterminate in the original frame (X = ±iY, R = ±Z).
  bool rotated_frame = false;
  BranchState branch;
};

SphericalAngles spherical_angles(const ComplexTriple& r, BranchState branch = {});

struct EigenSystem2 {
  Complex lambda_plus, lambda_minus;
  Ket u_plus, u_minus;
  Bra ut_plus, ut_minus;
  Complex R, theta, phi;
  bool rotated_frame = false;
  BranchState branch;
};

/// Closed-form eigensystem with λ± = λ₀ ± R, R continued from `branch`.
EigenSystem2 eigensystem(const Hamiltonian2& h, BranchState branch = {});

}  // namespace epmono

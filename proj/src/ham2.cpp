#include "epmono/ham2.hpp"

#include <cmath>

namespace epmono {

Hamiltonian2::Hamiltonian2(Complex lambda0, const ComplexTriple& r)
    : lambda0_(require_finite(lambda0, "lambda0")), r_(r), mat_(pauli_combination(lambda0, r)) {
  if (!is_finite(r)) throw Error(ErrorKind::NonFinite, "Hamiltonian vector is not finite");
}

Hamiltonian2 Hamiltonian2::from_matrix(const ComplexMat2& m) {
  const BlockParams p = project_block(m.a11, m.a12, m.a21, m.a22);
  return Hamiltonian2(p.lambda0, {p.x, p.y, p.z});
}

BlockParams project_block(Complex a11, Complex a12, Complex a21, Complex a22) noexcept {
  return {0.5 * (a11 + a22), 0.5 * (a12 + a21), (a21 - a12) / (2.0 * kI), 0.5 * (a11 - a22)};
}

const char* to_string(DegeneracyLabel label) noexcept {
  switch (label) {
    case DegeneracyLabel::NonDegenerate: return "NonDegenerate";
    case DegeneracyLabel::DiabolicPoint: return "DiabolicPoint";
    case DegeneracyLabel::ExceptionalPoint: return "ExceptionalPoint";
  }
  return "?";
}

const char* to_string(MonopoleKind kind) noexcept {
  switch (kind) {
    case MonopoleKind::Dirac: return "Dirac";
    case MonopoleKind::Complex: return "Complex";
    case MonopoleKind::ComplexDirac: return "ComplexDirac";
    case MonopoleKind::OneSheetedHyperbolic: return "OneSheetedHyperbolic";
    case MonopoleKind::TwoSheetedHyperbolic: return "TwoSheetedHyperbolic";
    case MonopoleKind::NotApplicable: return "NotApplicable";
  }
  return "?";
}

ComplexTriple model_vector(const ModelTag& tag) noexcept {
  return {tag.x, tag.y, Complex{tag.z, -tag.epsilon}};
}

namespace {

MonopoleKind kind_of(const ModelTag& m) {
  if (m.epsilon == 0.0) return MonopoleKind::Dirac;
  const double scale = std::max({std::abs(m.x), std::abs(m.y), std::abs(m.z), std::abs(m.epsilon)});
  if (std::abs(m.z) <= 1e-12 * scale) {
    const double disc = m.x * m.x + m.y * m.y - m.epsilon * m.epsilon;
    const double tol = 1e-12 * scale * scale;
    if (disc > tol) return MonopoleKind::OneSheetedHyperbolic;
    if (disc < -tol) return MonopoleKind::TwoSheetedHyperbolic;
  }
  return m.epsilon_constant ? MonopoleKind::ComplexDirac : MonopoleKind::Complex;
}

DegeneracyLabel label_of(const ComplexTriple& r) {
  const double scale = norm(r);
  if (scale <= kDiabolicRadius) return DegeneracyLabel::DiabolicPoint;
  const double r_abs = std::sqrt(std::abs(cdot(r, r)));
  if (r_abs <= kDegeneracyRadius * scale) return DegeneracyLabel::ExceptionalPoint;
  return DegeneracyLabel::NonDegenerate;
}

void require_nondegenerate(const ComplexTriple& r) {
  const DegeneracyLabel label = label_of(r);
  if (label != DegeneracyLabel::NonDegenerate) {
    throw DegeneratePointError({label, MonopoleKind::NotApplicable},
                               std::string("eigensystem undefined at ") + to_string(label));
  }
}

struct HalfAngles {
  Complex c, s;
};

HalfAngles half_angles(Complex R, Complex z) {
  return {csqrt_principal((R + z) / (2.0 * R)), csqrt_principal((R - z) / (2.0 * R))};
}

bool tiny(Complex v, double scale) { return std::abs(v) <= 1e-12 * scale; }

// θ and φ for vector r with root R; nullopt when φ is indeterminate.
std::optional<std::pair<Complex, Complex>> angles_in_frame(const ComplexTriple& r, Complex R) {
  const double scale = norm(r);
  const auto [c, s] = half_angles(R, r.z);
  const Complex theta = -2.0 * kI * std::log(c + kI * s);
  const Complex plus = r.x + kI * r.y;
  const Complex minus = r.x - kI * r.y;
  const bool plus_small = tiny(plus, scale);
  const bool minus_small = tiny(minus, scale);
  if (plus_small && minus_small) return std::pair{theta, Complex{}};
  if (plus_small || minus_small) return std::nullopt;
  return std::pair{theta, -kI * std::log(plus / (2.0 * R * c * s))};
}

}  // namespace

DegeneracyClass classify(const ComplexTriple& r, std::optional<ModelTag> tag) noexcept {
  DegeneracyClass out;
  out.label = label_of(r);
  if (tag) out.monopole_kind = kind_of(*tag);
  return out;
}

SphericalAngles spherical_angles(const ComplexTriple& r, BranchState branch) {
  if (!is_finite(r)) throw Error(ErrorKind::NonFinite, "spherical_angles input");
  require_nondegenerate(r);
  const ContinuedRoot root = csqrt_continued(cdot(r, r), branch);
  SphericalAngles out{root.value, 0.0, 0.0, false, root.state};
  if (auto a = angles_in_frame(r, root.value)) {
    out.theta = a->first;
    out.phi = a->second;
    return out;
  }
  const ComplexTriple rotated{r.z, -r.y, r.x};
  if (auto a = angles_in_frame(rotated, root.value)) {
    out.theta = a->first;
    out.phi = a->second;
    out.rotated_frame = true;
    return out;
  }
  throw Error(ErrorKind::IndeterminatePhase, "azimuth indeterminate in both frames");
}

EigenSystem2 eigensystem(const Hamiltonian2& h, BranchState branch) {
  const ComplexTriple& r = h.r();
  const SphericalAngles ang = spherical_angles(r, branch);
  const Complex R = ang.R;
  const auto [c, s] = half_angles(R, r.z);
  const Complex plus = r.x + kI * r.y;
  const Complex minus = r.x - kI * r.y;

  EigenSystem2 e;
  e.lambda_plus = h.lambda0() + R;
  e.lambda_minus = h.lambda0() - R;
  e.R = R;
  e.theta = ang.theta;
  e.phi = ang.phi;
  e.rotated_frame = ang.rotated_frame;
  e.branch = ang.branch;
  // Either half-angle form is exact; use the one with the larger divisor.
  if (std::abs(c) >= std::abs(s)) {
    const Complex d = 2.0 * R * c;
    e.u_plus = {c, plus / d};
    e.ut_plus = {c, minus / d};
    e.u_minus = {-minus / d, c};
    e.ut_minus = {-plus / d, c};
  } else {
    const Complex d = 2.0 * R * s;
    e.u_plus = {minus / d, s};
    e.ut_plus = {plus / d, s};
    e.u_minus = {s, -plus / d};
    e.ut_minus = {s, -minus / d};
  }
  return e;
}

}  // namespace epmono

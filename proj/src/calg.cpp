#include "epmono/calg.hpp"

#include <cmath>
#include <string>

namespace epmono {

Complex require_finite(Complex z, const char* what) {
  if (!is_finite(z)) throw Error(ErrorKind::NonFinite, std::string(what) + " is not finite");
  return z;
}

double norm(const ComplexTriple& a) noexcept {
  return std::sqrt(std::norm(a.x) + std::norm(a.y) + std::norm(a.z));
}

bool is_finite(const ComplexTriple& a) noexcept {
  return is_finite(a.x) && is_finite(a.y) && is_finite(a.z);
}

Complex cdot(const ComplexTriple& a, const ComplexTriple& b) noexcept {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

ComplexTriple ccross(const ComplexTriple& a, const ComplexTriple& b) noexcept {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double max_abs(const ComplexMat2& m) noexcept {
  return std::max({std::abs(m.a11), std::abs(m.a12), std::abs(m.a21), std::abs(m.a22)});
}

ComplexMat2 pauli_combination(Complex s0, const ComplexTriple& v) noexcept {
  return {s0 + v.z, v.x - kI * v.y, v.x + kI * v.y, s0 - v.z};
}

ComplexTriple bloch_vector(const Bra& l, const Ket& r) noexcept {
  // n1 = a b̃ + ã b, n2 = i(a b̃ - ã b), n3 = a ã - b b̃
  return {r.a * l.b + l.a * r.b, kI * (r.a * l.b - l.a * r.b), r.a * l.a - r.b * l.b};
}

Complex csqrt_principal(Complex z) noexcept {
  Complex w = std::sqrt(z);
  // std::sqrt follows the sign of a signed-zero imaginary part on the
  // negative real axis; the convention here is Im >= 0 when Re == 0.
  if (w.real() == 0.0 && w.imag() < 0.0) w = -w;
  return w;
}

ContinuedRoot csqrt_continued(Complex z, BranchState state) {
  require_finite(z, "csqrt_continued argument");
  const Complex w = csqrt_principal(z);
  if (!state.initialised) {
    state.current_value = w;
    state.initialised = true;
    return {w, state};
  }
  const double keep = std::abs(w - state.current_value);
  const double flip = std::abs(-w - state.current_value);
  const double closer = std::min(keep, flip);
  const double rival = std::max(keep, flip);
  if (!(closer < state.continuation_tolerance * rival)) {
    throw Error(ErrorKind::StepTooLarge,
                "square-root continuation cannot resolve the sheet; shrink the step");
  }
  const Complex chosen = keep <= flip ? w : -w;
  state.current_value = chosen;
  return {chosen, state};
}

std::vector<Complex> clog_unwrapped(std::span<const Complex> series) {
  std::vector<Complex> out;
  out.reserve(series.size());
  double phase = 0.0;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const Complex z = require_finite(series[k], "clog_unwrapped entry");
    if (z == Complex{}) throw Error(ErrorKind::ZeroArgument, "logarithm of zero at index " + std::to_string(k));
    if (k == 0) {
      phase = std::arg(z);
    } else {
      const double step = std::arg(z / series[k - 1]);
      if (std::abs(step) > kPi - 1e-9) {
        throw Error(ErrorKind::PhaseStepTooLarge,
                    "phase step of pi at index " + std::to_string(k) + " is ambiguous");
      }
      phase += step;
    }
    out.emplace_back(std::log(std::abs(z)), phase);
  }
  return out;
}

Complex catan(Complex z) {
  const Complex num = 1.0 + kI * z;
  const Complex den = 1.0 - kI * z;
  if (den == Complex{} || num == Complex{}) {
    throw Error(ErrorKind::ZeroArgument, "arctangent at a logarithmic singularity (z = ±i)");
  }
  return std::log(num / den) / (2.0 * kI);
}

Complex mod_pi(Complex z) noexcept { return {std::remainder(z.real(), kPi), z.imag()}; }

Complex mod_two_pi(Complex z) noexcept { return {std::remainder(z.real(), 2.0 * kPi), z.imag()}; }

double phase_distance_mod_pi(Complex a, Complex b) noexcept { return std::abs(mod_pi(a - b)); }

}  // namespace epmono

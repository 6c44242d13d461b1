#pragma once

// Complex scalar, 3-vector and 2x2 kernel with branch-tracked multivalued
// functions. Vectors use the bilinear (non-conjugating) dot product
// throughout: on the complexified sphere n·n = 1, not |n|^2 = 1.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "epmono/errors.hpp"

namespace epmono {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

inline bool is_finite(Complex z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Throws NonFinite when z has a NaN/inf component; returns z otherwise.
Complex require_finite(Complex z, const char* what);

/// Tolerance rule shared by all modules: absolute below unit magnitude,
/// relative above it.
inline bool near(Complex a, Complex b, double tol) noexcept {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tol * scale;
}

struct ComplexTriple {
  Complex x{}, y{}, z{};

  Complex& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  const Complex& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  friend ComplexTriple operator+(const ComplexTriple& a, const ComplexTriple& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend ComplexTriple operator-(const ComplexTriple& a, const ComplexTriple& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend ComplexTriple operator-(const ComplexTriple& a) { return {-a.x, -a.y, -a.z}; }
  friend ComplexTriple operator*(Complex s, const ComplexTriple& a) {
    return {s * a.x, s * a.y, s * a.z};
  }
  friend ComplexTriple operator*(const ComplexTriple& a, Complex s) { return s * a; }
  friend ComplexTriple operator/(const ComplexTriple& a, Complex s) {
    return {a.x / s, a.y / s, a.z / s};
  }
  ComplexTriple& operator+=(const ComplexTriple& b) {
    x += b.x;
    y += b.y;
    z += b.z;
    return *this;
  }
  friend bool operator==(const ComplexTriple&, const ComplexTriple&) = default;
};

/// Euclidean (Hermitian) norm sqrt(|x|^2+|y|^2+|z|^2); used for scales only.
double norm(const ComplexTriple& a) noexcept;
bool is_finite(const ComplexTriple& a) noexcept;

/// Bilinear dot product x_a x_b + y_a y_b + z_a z_b (no conjugation).
Complex cdot(const ComplexTriple& a, const ComplexTriple& b) noexcept;
ComplexTriple ccross(const ComplexTriple& a, const ComplexTriple& b) noexcept;

/// Column state |u> = (a, b).
struct Ket {
  Complex a{}, b{};
  friend Ket operator+(const Ket& u, const Ket& v) { return {u.a + v.a, u.b + v.b}; }
  friend Ket operator*(Complex s, const Ket& u) { return {s * u.a, s * u.b}; }
};

/// Row state <ũ| = (ã, b̃). Not the conjugate of a Ket.
struct Bra {
  Complex a{}, b{};
  friend Bra operator+(const Bra& u, const Bra& v) { return {u.a + v.a, u.b + v.b}; }
  friend Bra operator*(Complex s, const Bra& u) { return {s * u.a, s * u.b}; }
};

inline Complex pair(const Bra& l, const Ket& r) noexcept { return l.a * r.a + l.b * r.b; }

struct ComplexMat2 {
  Complex a11{}, a12{}, a21{}, a22{};

  static ComplexMat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  friend ComplexMat2 operator*(const ComplexMat2& p, const ComplexMat2& q) {
    return {p.a11 * q.a11 + p.a12 * q.a21, p.a11 * q.a12 + p.a12 * q.a22,
            p.a21 * q.a11 + p.a22 * q.a21, p.a21 * q.a12 + p.a22 * q.a22};
  }
  friend ComplexMat2 operator+(const ComplexMat2& p, const ComplexMat2& q) {
    return {p.a11 + q.a11, p.a12 + q.a12, p.a21 + q.a21, p.a22 + q.a22};
  }
  friend ComplexMat2 operator-(const ComplexMat2& p, const ComplexMat2& q) {
    return {p.a11 - q.a11, p.a12 - q.a12, p.a21 - q.a21, p.a22 - q.a22};
  }
  friend ComplexMat2 operator*(Complex s, const ComplexMat2& p) {
    return {s * p.a11, s * p.a12, s * p.a21, s * p.a22};
  }
  friend Ket operator*(const ComplexMat2& m, const Ket& u) {
    return {m.a11 * u.a + m.a12 * u.b, m.a21 * u.a + m.a22 * u.b};
  }
  friend Bra operator*(const Bra& l, const ComplexMat2& m) {
    return {l.a * m.a11 + l.b * m.a21, l.a * m.a12 + l.b * m.a22};
  }
};

/// Max-abs entry; scale for matrix comparisons.
double max_abs(const ComplexMat2& m) noexcept;

/// s0·I + v·σ.
ComplexMat2 pauli_combination(Complex s0, const ComplexTriple& v) noexcept;

/// Bloch vector <ũ|σ|u>.
ComplexTriple bloch_vector(const Bra& l, const Ket& r) noexcept;

/// Principal square root: Re >= 0, and Im >= 0 when Re == 0.
Complex csqrt_principal(Complex z) noexcept;

/// Square-root sheet tracker passed by value along a parameter path.
struct BranchState {
  Complex current_value{1.0, 0.0};
  double continuation_tolerance = 0.5;
  bool initialised = false;

  static BranchState fresh(double tolerance = 0.5) { return {Complex{1.0, 0.0}, tolerance, false}; }
  static BranchState at(Complex value, double tolerance = 0.5) { return {value, tolerance, true}; }
};

struct ContinuedRoot {
  Complex value;
  BranchState state;
};

/// Square root continued from state.current_value. An uninitialised state
/// starts on the principal branch. Throws StepTooLarge when the closer
/// candidate is not at least 1/tolerance times closer than the rival.
ContinuedRoot csqrt_continued(Complex z, BranchState state);

/// Logarithm of a time series with continuous imaginary part. Throws
/// PhaseStepTooLarge when a consecutive phase step is (numerically) ±π and
/// ZeroArgument on a zero entry.
std::vector<Complex> clog_unwrapped(std::span<const Complex> series);

/// Complex arctangent via (1/2i)·log((1+iz)/(1-iz)), principal branch.
Complex catan(Complex z);

/// Reduces the real part to (-π/2, π/2]; imaginary part untouched.
Complex mod_pi(Complex z) noexcept;
/// Reduces the real part to (-π, π]; imaginary part untouched.
Complex mod_two_pi(Complex z) noexcept;
/// |mod_pi(a - b)|, the distance used for phase comparisons.
double phase_distance_mod_pi(Complex a, Complex b) noexcept;

}  // namespace epmono

#pragma once

// Test-only helpers: seeded random inputs and independent numerical oracles
// (matrix exponential, finite differences, Gauss-Legendre) that share no
// code with the library's closed forms.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "epmono/calg.hpp"

namespace testsupport {

using epmono::Complex;
using epmono::ComplexMat2;
using epmono::ComplexTriple;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  Complex complex(double scale = 1.0) { return {uniform(-scale, scale), uniform(-scale, scale)}; }
  ComplexTriple triple(double scale = 1.0) { return {complex(scale), complex(scale), complex(scale)}; }

 private:
  std::mt19937_64 gen_;
};

inline double dist(const ComplexTriple& a, const ComplexTriple& b) { return epmono::norm(a - b); }
inline double dist(const ComplexMat2& a, const ComplexMat2& b) { return epmono::max_abs(a - b); }

// exp(M) by scaling and squaring with a 30-term Taylor core.
inline ComplexMat2 expm(const ComplexMat2& m) {
  int squarings = 0;
  double size = epmono::max_abs(m);
  while (size > 0.25) {
    size *= 0.5;
    ++squarings;
  }
  const ComplexMat2 a = std::ldexp(1.0, -squarings) * m;
  ComplexMat2 term = ComplexMat2::identity();
  ComplexMat2 sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = (1.0 / k) * (term * a);
    sum = sum + term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

// exp(-i H t) for constant H.
inline ComplexMat2 expm_propagator(const ComplexMat2& h, double t) {
  return expm(Complex{0.0, -t} * h);
}

// 20-point Gauss-Legendre on [a,b] over n panels.
inline Complex gauss_legendre(const std::function<Complex(double)>& f, double a, double b, int panels) {
  static const double x[10] = {0.0765265211334973, 0.2277858511416451, 0.3737060887154195,
                               0.5108670019508271, 0.6360536807265150, 0.7463319064601508,
                               0.8391169718222188, 0.9122344282513259, 0.9639719272779138,
                               0.9931285991850949};
  static const double w[10] = {0.1527533871307258, 0.1491729864726037, 0.1420961093183820,
                               0.1316886384491766, 0.1181945319615184, 0.1019301198172404,
                               0.0832767415767048, 0.0626720483341091, 0.0406014298003869,
                               0.0176140071391521};
  Complex total{};
  const double hw = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * hw;
    for (int k = 0; k < 10; ++k) {
      total += 0.5 * hw * w[k] * (f(mid - 0.5 * hw * x[k]) + f(mid + 0.5 * hw * x[k]));
    }
  }
  return total;
}

}  // namespace testsupport

#pragma once

// Uniform-grid differentiation and integration shared by the phase and
// monopole modules.

#include <functional>
#include <span>
#include <vector>

#include "epmono/calg.hpp"

namespace epmono::quad {

/// Fourth-order finite-difference derivative on a uniform grid (central in
/// the interior, one-sided at the ends). Needs at least 5 samples; falls back
/// to second order for 3-4 samples and first order for 2.
template <class T>
std::vector<T> derivative(std::span<const T> f, double h) {
  const std::size_t n = f.size();
  std::vector<T> d(n);
  if (n < 2) return d;
  const Complex inv = 1.0 / h;
  if (n < 5) {
    if (n == 2) {
      d[0] = d[1] = inv * (f[1] - f[0]);
      return d;
    }
    for (std::size_t k = 1; k + 1 < n; ++k) d[k] = (0.5 * inv) * (f[k + 1] - f[k - 1]);
    d[0] = (0.5 * inv) * (-3.0 * f[0] + 4.0 * f[1] - f[2]);
    d[n - 1] = (0.5 * inv) * (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]);
    return d;
  }
  const Complex c12 = inv / 12.0;
  for (std::size_t k = 2; k + 2 < n; ++k) {
    d[k] = c12 * (f[k - 2] - 8.0 * f[k - 1] + 8.0 * f[k + 1] - f[k + 2]);
  }
  d[0] = c12 * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
  d[1] = c12 * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
  d[n - 2] = c12 * (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]);
  d[n - 1] = c12 * (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]);
  return d;
}

/// Fourth-order central derivative of a periodic sequence (last sample is
/// NOT repeated).
template <class T>
std::vector<T> periodic_derivative(std::span<const T> f, double h) {
  const std::size_t n = f.size();
  std::vector<T> d(n);
  const Complex c12 = 1.0 / (12.0 * h);
  for (std::size_t k = 0; k < n; ++k) {
    const T& m2 = f[(k + n - 2) % n];
    const T& m1 = f[(k + n - 1) % n];
    const T& p1 = f[(k + 1) % n];
    const T& p2 = f[(k + 2) % n];
    d[k] = c12 * (m2 - 8.0 * m1 + 8.0 * p1 - p2);
  }
  return d;
}

/// Running integral from the first sample: trapezoid with the endpoint
/// derivative correction, fourth order on smooth data.
std::vector<Complex> cumulative_integral(std::span<const Complex> f, double h);

/// Composite Simpson (3/8 rule on the last panel for an odd interval count).
Complex simpson(std::span<const Complex> f, double h);

struct QuadratureResult {
  Complex value;
  bool converged = false;
  std::size_t evaluations = 0;
};

/// Periodic trapezoid on [a, a+period) with sample doubling until successive
/// results differ by less than tol (relative above unit magnitude); at most
/// max_samples points.
QuadratureResult periodic_trapezoid(const std::function<Complex(double)>& f, double a, double period,
                                    double tol = 1e-8, std::size_t max_samples = std::size_t{1} << 20);

/// Romberg integration on [a, b] with the same stopping rule.
QuadratureResult romberg(const std::function<Complex(double)>& f, double a, double b, double tol = 1e-8,
                         std::size_t max_samples = std::size_t{1} << 20);

}  // namespace epmono::quad

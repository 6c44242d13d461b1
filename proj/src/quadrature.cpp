#include "epmono/quadrature.hpp"

#include <cmath>

namespace epmono::quad {

std::vector<Complex> cumulative_integral(std::span<const Complex> f, double h) {
  const std::size_t n = f.size();
  std::vector<Complex> out(n);
  if (n < 2) return out;
  const std::vector<Complex> df = derivative<Complex>(f, h);
  Complex trap{};
  for (std::size_t k = 1; k < n; ++k) {
    trap += 0.5 * h * (f[k - 1] + f[k]);
    out[k] = trap - (h * h / 12.0) * (df[k] - df[0]);
  }
  return out;
}

Complex simpson(std::span<const Complex> f, double h) {
  const std::size_t n = f.size();
  if (n < 2) return {};
  if (n == 2) return 0.5 * h * (f[0] + f[1]);
  const std::size_t intervals = n - 1;
  std::size_t end = intervals % 2 == 0 ? intervals : intervals - 3;
  Complex sum{};
  for (std::size_t k = 0; k + 2 <= end; k += 2) sum += (h / 3.0) * (f[k] + 4.0 * f[k + 1] + f[k + 2]);
  if (end != intervals) {
    sum += (3.0 * h / 8.0) * (f[end] + 3.0 * f[end + 1] + 3.0 * f[end + 2] + f[end + 3]);
  }
  return sum;
}

namespace {

bool settled(Complex a, Complex b, double tol) { return near(a, b, tol); }

}  // namespace

QuadratureResult periodic_trapezoid(const std::function<Complex(double)>& f, double a, double period,
                                    double tol, std::size_t max_samples) {
  std::size_t n = 16;
  Complex sum{};
  for (std::size_t k = 0; k < n; ++k) sum += f(a + period * static_cast<double>(k) / n);
  Complex value = sum * (period / n);
  QuadratureResult r{value, false, n};
  while (2 * n <= max_samples) {
    for (std::size_t k = 0; k < n; ++k) sum += f(a + period * (k + 0.5) / n);
    n *= 2;
    const Complex next = sum * (period / n);
    r.evaluations = n;
    if (settled(next, value, tol)) {
      r.value = next;
      r.converged = true;
      return r;
    }
    value = next;
  }
  r.value = value;
  return r;
}

QuadratureResult romberg(const std::function<Complex(double)>& f, double a, double b, double tol,
                         std::size_t max_samples) {
  std::vector<Complex> prev{0.5 * (b - a) * (f(a) + f(b))};
  std::size_t intervals = 1;
  QuadratureResult r{prev[0], false, 2};
  while (2 * intervals <= max_samples) {
    const double h = (b - a) / (2.0 * intervals);
    Complex mid{};
    for (std::size_t k = 0; k < intervals; ++k) mid += f(a + (2.0 * k + 1.0) * h);
    intervals *= 2;
    r.evaluations = intervals + 1;
    std::vector<Complex> row(prev.size() + 1);
    row[0] = 0.5 * prev[0] + h * mid;
    double factor = 4.0;
    for (std::size_t j = 1; j < row.size(); ++j, factor *= 4.0) {
      row[j] = row[j - 1] + (row[j - 1] - prev[j - 1]) / (factor - 1.0);
    }
    // Require a few levels before trusting the extrapolation.
    if (row.size() >= 4 && settled(row.back(), prev.back(), tol)) {
      r.value = row.back();
      r.converged = true;
      return r;
    }
    prev = std::move(row);
    r.value = prev.back();
  }
  return r;
}

}  // namespace epmono::quad

#include <cmath>

#include "epmono/kernels/potential.hpp"

namespace epmono::kernels {

void potential_scalar(const PotentialParams& p, const PotentialBatch& b) noexcept {
  const double eps2 = p.epsilon * p.epsilon;
  for (std::size_t i = 0; i < b.n; ++i) {
    const double x = b.x[i], y = b.y[i], z = b.z[i];
    const double rho2 = x * x + y * y;
    // R² = a + ib
    const double a = p.hyperbolic ? rho2 - z * z : rho2 + z * z - eps2;
    const double im = p.hyperbolic ? 0.0 : -2.0 * p.epsilon * z;
    const double scale2 = rho2 + z * z + eps2;
    // same operation sequence as the vector kernels, so results are bit-identical
    const double mod = std::sqrt(a * a + im * im);
    if (mod <= p.singular_tol * scale2) {
      b.phi_re[i] = 0.0;
      b.phi_im[i] = 0.0;
      b.singular[i] = 1;
      continue;
    }
    // Principal root, stable in both half planes; Im ≥ 0 on the cut.
    double sr, si;
    if (a >= 0.0) {
      sr = std::sqrt(0.5 * (mod + a));
      si = im / (2.0 * sr);
    } else {
      si = std::sqrt(0.5 * (mod - a));
      if (im < 0.0) si = -si;
      sr = im / (2.0 * si);
    }
    // q / (sr + i si)
    const double den = sr * sr + si * si;
    const double qr = p.q_eff.real(), qi = p.q_eff.imag();
    b.phi_re[i] = (qr * sr + qi * si) / den;
    b.phi_im[i] = (qi * sr - qr * si) / den;
    b.singular[i] = 0;
  }
}

}  // namespace epmono::kernels

#pragma once

// Batch evaluation of the complex monopole potential Φ = q_eff / R over real
// grid points, R² = x² + y² + (z - iε)² (Dirac, complex Dirac) or
// x² + y² - z² (hyperbolic). Scalar reference plus an AVX2 variant chosen at
// run time; both must agree to ~1e-14 relative.

#include <complex>
#include <cstddef>
#include <cstdint>

namespace epmono::kernels {

struct PotentialParams {
  double epsilon = 0.0;
  bool hyperbolic = false;
  std::complex<double> q_eff{0.5, 0.0};
  double singular_tol = 1e-6;  // |R²| ≤ tol·(x²+y²+z²+ε²) is flagged
};

struct PotentialBatch {
  const double* x;
  const double* y;
  const double* z;
  std::size_t n;
  double* phi_re;
  double* phi_im;
  std::uint8_t* singular;
};

void potential_scalar(const PotentialParams& p, const PotentialBatch& b) noexcept;
#if defined(EPMONO_HAVE_AVX2)
void potential_avx2(const PotentialParams& p, const PotentialBatch& b) noexcept;
#endif

/// Dispatches to the widest variant the CPU supports.
void potential(const PotentialParams& p, const PotentialBatch& b) noexcept;
const char* potential_backend() noexcept;

}  // namespace epmono::kernels

#include <immintrin.h>

#include "epmono/kernels/potential.hpp"

namespace epmono::kernels {

void potential_avx2(const PotentialParams& p, const PotentialBatch& b) noexcept {
  const std::size_t full = b.n - b.n % 4;
  const __m256d eps = _mm256_set1_pd(p.epsilon);
  const __m256d eps2 = _mm256_mul_pd(eps, eps);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d tol = _mm256_set1_pd(p.singular_tol);
  const __m256d qr = _mm256_set1_pd(p.q_eff.real());
  const __m256d qi = _mm256_set1_pd(p.q_eff.imag());
  const __m256d neg_two_eps = _mm256_mul_pd(_mm256_set1_pd(-2.0), eps);

  for (std::size_t i = 0; i < full; i += 4) {
    const __m256d x = _mm256_loadu_pd(b.x + i);
    const __m256d y = _mm256_loadu_pd(b.y + i);
    const __m256d z = _mm256_loadu_pd(b.z + i);
    const __m256d rho2 = _mm256_add_pd(_mm256_mul_pd(x, x), _mm256_mul_pd(y, y));
    const __m256d z2 = _mm256_mul_pd(z, z);
    __m256d a, im;
    if (p.hyperbolic) {
      a = _mm256_sub_pd(rho2, z2);
      im = zero;
    } else {
      a = _mm256_sub_pd(_mm256_add_pd(rho2, z2), eps2);
      im = _mm256_mul_pd(neg_two_eps, z);
    }
    const __m256d scale2 = _mm256_add_pd(_mm256_add_pd(rho2, z2), eps2);
    // hypot without overflow care: grid coordinates are O(1..1e3).
    const __m256d mod = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(im, im)));
    const __m256d singular = _mm256_cmp_pd(mod, _mm256_mul_pd(tol, scale2), _CMP_LE_OQ);

    const __m256d upper = _mm256_cmp_pd(a, zero, _CMP_GE_OQ);
    // Branch a ≥ 0
    const __m256d sr_pos = _mm256_sqrt_pd(_mm256_mul_pd(half, _mm256_add_pd(mod, a)));
    const __m256d si_pos = _mm256_div_pd(im, _mm256_mul_pd(two, sr_pos));
    // Branch a < 0
    __m256d si_neg = _mm256_sqrt_pd(_mm256_mul_pd(half, _mm256_sub_pd(mod, a)));
    const __m256d im_negative = _mm256_cmp_pd(im, zero, _CMP_LT_OQ);
    si_neg = _mm256_blendv_pd(si_neg, _mm256_sub_pd(zero, si_neg), im_negative);
    const __m256d sr_neg = _mm256_div_pd(im, _mm256_mul_pd(two, si_neg));

    const __m256d sr = _mm256_blendv_pd(sr_neg, sr_pos, upper);
    const __m256d si = _mm256_blendv_pd(si_neg, si_pos, upper);
    const __m256d den = _mm256_add_pd(_mm256_mul_pd(sr, sr), _mm256_mul_pd(si, si));
    __m256d re = _mm256_div_pd(_mm256_add_pd(_mm256_mul_pd(qr, sr), _mm256_mul_pd(qi, si)), den);
    __m256d imv = _mm256_div_pd(_mm256_sub_pd(_mm256_mul_pd(qi, sr), _mm256_mul_pd(qr, si)), den);
    re = _mm256_blendv_pd(re, zero, singular);
    imv = _mm256_blendv_pd(imv, zero, singular);
    _mm256_storeu_pd(b.phi_re + i, re);
    _mm256_storeu_pd(b.phi_im + i, imv);
    const int mask = _mm256_movemask_pd(singular);
    for (int k = 0; k < 4; ++k) b.singular[i + k] = static_cast<std::uint8_t>((mask >> k) & 1);
  }
  if (full < b.n) {
    PotentialBatch tail{b.x + full, b.y + full, b.z + full, b.n - full,
                        b.phi_re + full, b.phi_im + full, b.singular + full};
    potential_scalar(p, tail);
  }
}

}  // namespace epmono::kernels

#include "epmono/kernels/potential.hpp"

namespace epmono::kernels {

namespace {

bool has_avx2() noexcept {
#if defined(EPMONO_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok;
#else
  return false;
#endif
}

}  // namespace

void potential(const PotentialParams& p, const PotentialBatch& b) noexcept {
#if defined(EPMONO_HAVE_AVX2)
  if (has_avx2()) {
    potential_avx2(p, b);
    return;
  }
#endif
  potential_scalar(p, b);
}

const char* potential_backend() noexcept { return has_avx2() ? "avx2" : "scalar"; }

}  // namespace epmono::kernels

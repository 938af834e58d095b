#include <immintrin.h>

#include "defseq/kernels.hpp"

namespace defseq::kernels {

namespace {

// One ymm register holds two complex doubles [re0, im0, re1, im1].
// For a = ar + i*ai broadcast over the register:
//   real-part accumulator  += ar * [br, bi]
//   swap accumulator       += ai * [bi, br]
// and addsub(real, swap) = [ar*br - ai*bi, ar*bi + ai*br].
inline __m256d swap_re_im(__m256d v) noexcept { return _mm256_permute_pd(v, 0x5); }

}  // namespace

void gemm_avx2(std::size_t m, std::size_t n, std::size_t k, const Complex* a, const Complex* b,
               Complex* c, bool accumulate) noexcept {
  const double* bd = reinterpret_cast<const double*>(b);
  double* cd = reinterpret_cast<double*>(c);

  for (std::size_t i = 0; i < m; ++i) {
    const Complex* arow = a + i * k;
    double* crow = cd + 2 * i * n;
    std::size_t j = 0;

    // 8 complex columns per pass: 4 registers x 2 accumulators.
    for (; j + 8 <= n; j += 8) {
      __m256d re0 = _mm256_setzero_pd(), re1 = _mm256_setzero_pd();
      __m256d re2 = _mm256_setzero_pd(), re3 = _mm256_setzero_pd();
      __m256d sw0 = _mm256_setzero_pd(), sw1 = _mm256_setzero_pd();
      __m256d sw2 = _mm256_setzero_pd(), sw3 = _mm256_setzero_pd();
      for (std::size_t p = 0; p < k; ++p) {
        const __m256d ar = _mm256_set1_pd(arow[p].real());
        const __m256d ai = _mm256_set1_pd(arow[p].imag());
        const double* bp = bd + 2 * (p * n + j);
        const __m256d b0 = _mm256_loadu_pd(bp);
        const __m256d b1 = _mm256_loadu_pd(bp + 4);
        const __m256d b2 = _mm256_loadu_pd(bp + 8);
        const __m256d b3 = _mm256_loadu_pd(bp + 12);
        re0 = _mm256_fmadd_pd(ar, b0, re0);
        re1 = _mm256_fmadd_pd(ar, b1, re1);
        re2 = _mm256_fmadd_pd(ar, b2, re2);
        re3 = _mm256_fmadd_pd(ar, b3, re3);
        sw0 = _mm256_fmadd_pd(ai, swap_re_im(b0), sw0);
        sw1 = _mm256_fmadd_pd(ai, swap_re_im(b1), sw1);
        sw2 = _mm256_fmadd_pd(ai, swap_re_im(b2), sw2);
        sw3 = _mm256_fmadd_pd(ai, swap_re_im(b3), sw3);
      }
      __m256d r0 = _mm256_addsub_pd(re0, sw0);
      __m256d r1 = _mm256_addsub_pd(re1, sw1);
      __m256d r2 = _mm256_addsub_pd(re2, sw2);
      __m256d r3 = _mm256_addsub_pd(re3, sw3);
      double* cp = crow + 2 * j;
      if (accumulate) {
        r0 = _mm256_add_pd(r0, _mm256_loadu_pd(cp));
        r1 = _mm256_add_pd(r1, _mm256_loadu_pd(cp + 4));
        r2 = _mm256_add_pd(r2, _mm256_loadu_pd(cp + 8));
        r3 = _mm256_add_pd(r3, _mm256_loadu_pd(cp + 12));
      }
      _mm256_storeu_pd(cp, r0);
      _mm256_storeu_pd(cp + 4, r1);
      _mm256_storeu_pd(cp + 8, r2);
      _mm256_storeu_pd(cp + 12, r3);
    }

    for (; j + 2 <= n; j += 2) {
      __m256d re = _mm256_setzero_pd();
      __m256d sw = _mm256_setzero_pd();
      for (std::size_t p = 0; p < k; ++p) {
        const __m256d bv = _mm256_loadu_pd(bd + 2 * (p * n + j));
        re = _mm256_fmadd_pd(_mm256_set1_pd(arow[p].real()), bv, re);
        sw = _mm256_fmadd_pd(_mm256_set1_pd(arow[p].imag()), swap_re_im(bv), sw);
      }
      __m256d r = _mm256_addsub_pd(re, sw);
      double* cp = crow + 2 * j;
      if (accumulate) r = _mm256_add_pd(r, _mm256_loadu_pd(cp));
      _mm256_storeu_pd(cp, r);
    }

    for (; j < n; ++j) {
      __m128d re = _mm_setzero_pd();
      __m128d sw = _mm_setzero_pd();
      for (std::size_t p = 0; p < k; ++p) {
        const __m128d bv = _mm_loadu_pd(bd + 2 * (p * n + j));
        re = _mm_fmadd_pd(_mm_set1_pd(arow[p].real()), bv, re);
        sw = _mm_fmadd_pd(_mm_set1_pd(arow[p].imag()), _mm_shuffle_pd(bv, bv, 0x1), sw);
      }
      __m128d r = _mm_addsub_pd(re, sw);
      double* cp = crow + 2 * j;
      if (accumulate) r = _mm_add_pd(r, _mm_loadu_pd(cp));
      _mm_storeu_pd(cp, r);
    }
  }
}

}  // namespace defseq::kernels

// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include <cmath>

#include "liedeg/kernels.hpp"

namespace liedeg::kernels::avx2 {

bool compiled() { return true; }

std::complex<double> weighted_cdot(const double* w, CSpan a, CSpan b) {
  __m256d sr = _mm256_setzero_pd();
  __m256d si = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= a.n; i += 4) {
    const __m256d ar = _mm256_loadu_pd(a.re + i);
    const __m256d ai = _mm256_loadu_pd(a.im + i);
    const __m256d br = _mm256_loadu_pd(b.re + i);
    const __m256d bi = _mm256_loadu_pd(b.im + i);
    const __m256d wk = w ? _mm256_loadu_pd(w + i) : one;
    const __m256d pr = _mm256_fmadd_pd(ar, br, _mm256_mul_pd(ai, bi));
    const __m256d pi = _mm256_fmsub_pd(ar, bi, _mm256_mul_pd(ai, br));
    sr = _mm256_fmadd_pd(wk, pr, sr);
    si = _mm256_fmadd_pd(wk, pi, si);
  }
  alignas(32) double lr[4];
  alignas(32) double li[4];
  _mm256_store_pd(lr, sr);
  _mm256_store_pd(li, si);
  double re = (lr[0] + lr[1]) + (lr[2] + lr[3]);
  double im = (li[0] + li[1]) + (li[2] + li[3]);
  for (; i < a.n; ++i) {
    const double wk = w ? w[i] : 1.0;
    re += wk * (a.re[i] * b.re[i] + a.im[i] * b.im[i]);
    im += wk * (a.re[i] * b.im[i] - a.im[i] * b.re[i]);
  }
  return {re, im};
}

void su2_mul_batch(double* a1r, double* a1i, double* a2r, double* a2i, const double* b1r,
                   const double* b1i, const double* b2r, const double* b2i, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xr = _mm256_loadu_pd(a1r + i);
    const __m256d xi = _mm256_loadu_pd(a1i + i);
    const __m256d yr = _mm256_loadu_pd(a2r + i);
    const __m256d yi = _mm256_loadu_pd(a2i + i);
    const __m256d ur = _mm256_loadu_pd(b1r + i);
    const __m256d ui = _mm256_loadu_pd(b1i + i);
    const __m256d vr = _mm256_loadu_pd(b2r + i);
    const __m256d vi = _mm256_loadu_pd(b2i + i);

    const __m256d c1r = _mm256_sub_pd(_mm256_fmsub_pd(xr, ur, _mm256_mul_pd(xi, ui)),
                                      _mm256_fmadd_pd(yr, vr, _mm256_mul_pd(yi, vi)));
    const __m256d c1i = _mm256_sub_pd(_mm256_fmadd_pd(xr, ui, _mm256_mul_pd(xi, ur)),
                                      _mm256_fmsub_pd(yi, vr, _mm256_mul_pd(yr, vi)));
    const __m256d c2r = _mm256_add_pd(_mm256_fmsub_pd(xr, vr, _mm256_mul_pd(xi, vi)),
                                      _mm256_fmadd_pd(yr, ur, _mm256_mul_pd(yi, ui)));
    const __m256d c2i = _mm256_add_pd(_mm256_fmadd_pd(xr, vi, _mm256_mul_pd(xi, vr)),
                                      _mm256_fmsub_pd(yi, ur, _mm256_mul_pd(yr, ui)));
    _mm256_storeu_pd(a1r + i, c1r);
    _mm256_storeu_pd(a1i + i, c1i);
    _mm256_storeu_pd(a2r + i, c2r);
    _mm256_storeu_pd(a2i + i, c2i);
  }
  if (i < n) scalar::su2_mul_batch(a1r + i, a1i + i, a2r + i, a2i + i, b1r + i, b1i + i, b2r + i,
                                   b2i + i, n - i);
}

void phase_advance(double* phases, double shift, std::size_t n) {
  const __m256d s = _mm256_set1_pd(shift);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d p = _mm256_add_pd(_mm256_loadu_pd(phases + i), s);
    p = _mm256_sub_pd(p, _mm256_floor_pd(p));
    const __m256d wrap = _mm256_cmp_pd(p, one, _CMP_GE_OQ);
    p = _mm256_blendv_pd(p, zero, wrap);
    _mm256_storeu_pd(phases + i, p);
  }
  if (i < n) scalar::phase_advance(phases + i, shift, n - i);
}

}  // namespace liedeg::kernels::avx2

// Copyright (c) vnkit contributors
// SPDX-License-Identifier: Apache-2.0

// AVX2 kernel variants. This translation unit is compiled with
// -mavx2 -mfma; callers reach it only through the runtime dispatch table.
//
// Reductions widen each 8-float lane pair to double and keep two __m256d
// accumulators, so the only difference from the scalar reference is summation
// order. Elementwise kernels perform the same per-element arithmetic as the
// scalar versions (mul then add, no FMA contraction) and are bit-identical.

#if defined(VNKIT_HAVE_AVX2)

#include <immintrin.h>

#include <cstddef>

namespace vnkit::simd::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

}  // namespace

double dot(const float* a, const float* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 va = _mm256_loadu_ps(a + i);
    __m256 vb = _mm256_loadu_ps(b + i);
    __m256d alo = _mm256_cvtps_pd(_mm256_castps256_ps128(va));
    __m256d ahi = _mm256_cvtps_pd(_mm256_extractf128_ps(va, 1));
    __m256d blo = _mm256_cvtps_pd(_mm256_castps256_ps128(vb));
    __m256d bhi = _mm256_cvtps_pd(_mm256_extractf128_ps(vb, 1));
    acc0 = _mm256_fmadd_pd(alo, blo, acc0);
    acc1 = _mm256_fmadd_pd(ahi, bhi, acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return acc;
}

double squared_norm(const float* a, std::size_t n) { return dot(a, a, n); }

void add(float* dst, const float* a, const float* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 va = _mm256_loadu_ps(a + i);
    __m256 vb = _mm256_loadu_ps(b + i);
    _mm256_storeu_ps(dst + i, _mm256_add_ps(va, vb));
  }
  for (; i < n; ++i) dst[i] = a[i] + b[i];
}

void scale(float* dst, const float* a, float s, std::size_t n) {
  const __m256 vs = _mm256_set1_ps(s);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    _mm256_storeu_ps(dst + i, _mm256_mul_ps(_mm256_loadu_ps(a + i), vs));
  }
  for (; i < n; ++i) dst[i] = a[i] * s;
}

void axpy(double* acc, const float* x, double w, std::size_t n) {
  const __m256d vw = _mm256_set1_pd(w);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vx = _mm256_cvtps_pd(_mm_loadu_ps(x + i));
    __m256d va = _mm256_loadu_pd(acc + i);
    // mul+add (not fmadd) to match the scalar reference bit for bit
    _mm256_storeu_pd(acc + i, _mm256_add_pd(va, _mm256_mul_pd(vw, vx)));
  }
  for (; i < n; ++i) acc[i] += w * static_cast<double>(x[i]);
}

}  // namespace vnkit::simd::avx2

#endif  // VNKIT_HAVE_AVX2

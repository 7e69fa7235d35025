// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0
//
// AVX2/FMA variants. This translation unit is the only one compiled with
// -mavx2 -mfma; nothing here may be called unless the CPU reports AVX2+FMA
// (see kernels_dispatch.cpp).

#include <immintrin.h>

#include <cmath>

#include "radnet/kernels/kernels.hpp"

namespace radnet::kern {
namespace avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

// 4-row by 8-column register tile; A elements broadcast, B rows streamed.
inline void tile4x8(int64_t k, const double* a, int64_t lda, const double* b,
                    int64_t ldb, __m256d acc[4][2]) {
  for (int64_t p = 0; p < k; ++p) {
    const double* brow = b + p * ldb;
    const __m256d b0 = _mm256_loadu_pd(brow);
    const __m256d b1 = _mm256_loadu_pd(brow + 4);
    for (int r = 0; r < 4; ++r) {
      const __m256d av = _mm256_set1_pd(a[r * lda + p]);
      acc[r][0] = _mm256_fmadd_pd(av, b0, acc[r][0]);
      acc[r][1] = _mm256_fmadd_pd(av, b1, acc[r][1]);
    }
  }
}

inline void store_tile(double* c, int64_t ldc, __m256d acc[4][2], double alpha,
                       double beta, int rows) {
  const __m256d va = _mm256_set1_pd(alpha);
  for (int r = 0; r < rows; ++r) {
    double* crow = c + r * ldc;
    __m256d v0 = _mm256_mul_pd(va, acc[r][0]);
    __m256d v1 = _mm256_mul_pd(va, acc[r][1]);
    if (beta != 0.0) {
      const __m256d vb = _mm256_set1_pd(beta);
      v0 = _mm256_fmadd_pd(vb, _mm256_loadu_pd(crow), v0);
      v1 = _mm256_fmadd_pd(vb, _mm256_loadu_pd(crow + 4), v1);
    }
    _mm256_storeu_pd(crow, v0);
    _mm256_storeu_pd(crow + 4, v1);
  }
}

// Tail columns (fewer than 8) handled one row at a time with scalar math.
inline void edge_block(int64_t rows, int64_t cols, int64_t k, double alpha,
                       const double* a, int64_t lda, const double* b,
                       int64_t ldb, double beta, double* c, int64_t ldc) {
  for (int64_t i = 0; i < rows; ++i) {
    for (int64_t j = 0; j < cols; ++j) {
      double s = 0.0;
      for (int64_t p = 0; p < k; ++p) s += a[i * lda + p] * b[p * ldb + j];
      double* cc = c + i * ldc + j;
      *cc = (beta == 0.0) ? alpha * s : alpha * s + beta * *cc;
    }
  }
}

}  // namespace

void gemm(int64_t m, int64_t n, int64_t k, double alpha, const double* a,
          int64_t lda, const double* b, int64_t ldb, double beta, double* c,
          int64_t ldc) {
  const int64_t m4 = m - (m % 4);
  const int64_t n8 = n - (n % 8);
  for (int64_t i = 0; i < m4; i += 4) {
    for (int64_t j = 0; j < n8; j += 8) {
      __m256d acc[4][2] = {{_mm256_setzero_pd(), _mm256_setzero_pd()},
                           {_mm256_setzero_pd(), _mm256_setzero_pd()},
                           {_mm256_setzero_pd(), _mm256_setzero_pd()},
                           {_mm256_setzero_pd(), _mm256_setzero_pd()}};
      tile4x8(k, a + i * lda, lda, b + j, ldb, acc);
      store_tile(c + i * ldc + j, ldc, acc, alpha, beta, 4);
    }
    if (n8 < n)
      edge_block(4, n - n8, k, alpha, a + i * lda, lda, b + n8, ldb, beta,
                 c + i * ldc + n8, ldc);
  }
  if (m4 < m)
    edge_block(m - m4, n, k, alpha, a + m4 * lda, lda, b, ldb, beta,
               c + m4 * ldc, ldc);
}

void add(const double* x, const double* y, double* out, int64_t n) {
  int64_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) out[i] = x[i] + y[i];
}

void sub(const double* x, const double* y, double* out, int64_t n) {
  int64_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) out[i] = x[i] - y[i];
}

void mul(const double* x, const double* y, double* out, int64_t n) {
  int64_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) out[i] = x[i] * y[i];
}

void axpy(double a, const double* x, double* y, int64_t n) {
  const __m256d va = _mm256_set1_pd(a);
  int64_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(
        y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

void scale(double a, const double* x, double* out, int64_t n) {
  const __m256d va = _mm256_set1_pd(a);
  int64_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) out[i] = a * x[i];
}

double sum(const double* x, int64_t n) {
  __m256d acc = _mm256_setzero_pd();
  int64_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i];
  return s;
}

double sumsq(const double* x, int64_t n) {
  __m256d acc = _mm256_setzero_pd();
  int64_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i] * x[i];
  return s;
}

double dot(const double* x, const double* y, int64_t n) {
  __m256d acc = _mm256_setzero_pd();
  int64_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double max_abs(const double* x, int64_t n) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d acc = _mm256_setzero_pd();
  int64_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_max_pd(acc, _mm256_and_pd(mask, _mm256_loadu_pd(x + i)));
  double lanes[4];
  _mm256_storeu_pd(lanes, acc);
  double s = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) s = std::max(s, std::fabs(x[i]));
  return s;
}

}  // namespace avx2

const KernelTable& avx2_table() {
  static const KernelTable t = {
      avx2::gemm, avx2::add,   avx2::sub, avx2::mul,  avx2::axpy,
      avx2::scale, avx2::sum,  avx2::sumsq, avx2::dot, avx2::max_abs,
  };
  return t;
}

}  // namespace radnet::kern

// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0
//
// Reference kernels. Plain loops, no intrinsics; the SIMD variants are
// equivalence-tested against these.

#include <cmath>
#include <vector>

#include "radnet/kernels/kernels.hpp"

namespace radnet::kern {
namespace scalar {

void gemm(int64_t m, int64_t n, int64_t k, double alpha, const double* a,
          int64_t lda, const double* b, int64_t ldb, double beta, double* c,
          int64_t ldc) {
  std::vector<double> row(static_cast<size_t>(n > 0 ? n : 0));
  for (int64_t i = 0; i < m; ++i) {
    for (int64_t j = 0; j < n; ++j) row[j] = 0.0;
    for (int64_t p = 0; p < k; ++p) {
      const double av = a[i * lda + p];
      const double* brow = b + p * ldb;
      for (int64_t j = 0; j < n; ++j) row[j] += av * brow[j];
    }
    double* crow = c + i * ldc;
    if (beta == 0.0) {
      for (int64_t j = 0; j < n; ++j) crow[j] = alpha * row[j];
    } else {
      for (int64_t j = 0; j < n; ++j) crow[j] = alpha * row[j] + beta * crow[j];
    }
  }
}

void add(const double* x, const double* y, double* out, int64_t n) {
  for (int64_t i = 0; i < n; ++i) out[i] = x[i] + y[i];
}

void sub(const double* x, const double* y, double* out, int64_t n) {
  for (int64_t i = 0; i < n; ++i) out[i] = x[i] - y[i];
}

void mul(const double* x, const double* y, double* out, int64_t n) {
  for (int64_t i = 0; i < n; ++i) out[i] = x[i] * y[i];
}

void axpy(double a, const double* x, double* y, int64_t n) {
  for (int64_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale(double a, const double* x, double* out, int64_t n) {
  for (int64_t i = 0; i < n; ++i) out[i] = a * x[i];
}

double sum(const double* x, int64_t n) {
  double s = 0.0;
  for (int64_t i = 0; i < n; ++i) s += x[i];
  return s;
}

double sumsq(const double* x, int64_t n) {
  double s = 0.0;
  for (int64_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

double dot(const double* x, const double* y, int64_t n) {
  double s = 0.0;
  for (int64_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double max_abs(const double* x, int64_t n) {
  double s = 0.0;
  for (int64_t i = 0; i < n; ++i) s = std::max(s, std::fabs(x[i]));
  return s;
}

}  // namespace scalar

const KernelTable& scalar_table() {
  static const KernelTable t = {
      scalar::gemm, scalar::add,   scalar::sub, scalar::mul,  scalar::axpy,
      scalar::scale, scalar::sum,  scalar::sumsq, scalar::dot, scalar::max_abs,
  };
  return t;
}

void transpose(const double* src, double* dst, int64_t m, int64_t n) {
  constexpr int64_t kBlock = 32;
  for (int64_t i0 = 0; i0 < m; i0 += kBlock) {
    const int64_t i1 = std::min(i0 + kBlock, m);
    for (int64_t j0 = 0; j0 < n; j0 += kBlock) {
      const int64_t j1 = std::min(j0 + kBlock, n);
      for (int64_t i = i0; i < i1; ++i)
        for (int64_t j = j0; j < j1; ++j) dst[j * m + i] = src[i * n + j];
    }
  }
}

}  // namespace radnet::kern

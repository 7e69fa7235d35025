// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace radnet::kern {

enum class Isa { Scalar, Avx2 };

// Flat table of the arithmetic inner loops everything above funnels into.
// Scalar entries are the reference semantics; SIMD entries must agree with
// them up to summation order (see tests/test_kernels.cpp).
struct KernelTable {
  // C = alpha * A(m,k) * B(k,n) + beta * C, all row-major with leading dims.
  void (*gemm)(int64_t m, int64_t n, int64_t k, double alpha, const double* a,
               int64_t lda, const double* b, int64_t ldb, double beta,
               double* c, int64_t ldc);

  void (*add)(const double* x, const double* y, double* out, int64_t n);
  void (*sub)(const double* x, const double* y, double* out, int64_t n);
  void (*mul)(const double* x, const double* y, double* out, int64_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, int64_t n);
  // out = a * x
  void (*scale)(double a, const double* x, double* out, int64_t n);

  double (*sum)(const double* x, int64_t n);
  double (*sumsq)(const double* x, int64_t n);
  double (*dot)(const double* x, const double* y, int64_t n);
  double (*max_abs)(const double* x, int64_t n);
};

// Table for a specific instruction set. Asking for an unsupported ISA throws.
const KernelTable& table(Isa isa);

// Table selected at startup: best ISA the CPU supports, overridable with
// RADNET_KERNELS=scalar|avx2.
const KernelTable& active();
Isa active_isa();
const char* isa_name(Isa isa);
bool isa_supported(Isa isa);

// Blocked out-of-place transpose, dst(n,m) = src(m,n)^T. Memory bound, so it
// has no per-ISA variants.
void transpose(const double* src, double* dst, int64_t m, int64_t n);

}  // namespace radnet::kern

// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0
//
// SIMD-vs-scalar equivalence for every kernel table entry, plus contract
// checks on the dispatcher.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "radnet/core/random.hpp"
#include "radnet/kernels/kernels.hpp"

using namespace radnet;

namespace {

std::vector<double> random_vec(Rng& rng, int64_t n, double lo = -1.0,
                               double hi = 1.0) {
  std::vector<double> v(static_cast<size_t>(n));
  rng.fill_uniform(v, lo, hi);
  return v;
}

bool have_avx2() { return kern::isa_supported(kern::Isa::Avx2); }

}  // namespace

TEST_CASE("dispatcher exposes a usable table") {
  const auto& t = kern::active();
  CHECK(t.gemm != nullptr);
  CHECK(kern::isa_supported(kern::Isa::Scalar));
  // The active ISA must always be supported on this machine.
  CHECK(kern::isa_supported(kern::active_isa()));
}

TEST_CASE("gemm agrees between ISA variants over odd shapes") {
  if (!have_avx2()) return;
  const auto& ref = kern::table(kern::Isa::Scalar);
  const auto& fast = kern::table(kern::Isa::Avx2);
  Rng rng(42);

  for (auto [m, n, k] : {std::tuple<int, int, int>{1, 1, 1},
                         {3, 5, 7},
                         {4, 8, 16},
                         {6, 9, 33},
                         {17, 23, 64},
                         {32, 32, 32},
                         {64, 128, 96},
                         {5, 1, 300}}) {
    auto a = random_vec(rng, m * k);
    auto b = random_vec(rng, k * n);
    auto c0 = random_vec(rng, m * n);
    auto c1 = c0;
    for (double alpha : {1.0, -0.5}) {
      for (double beta : {0.0, 1.0, 0.25}) {
        ref.gemm(m, n, k, alpha, a.data(), k, b.data(), n, beta, c0.data(), n);
        fast.gemm(m, n, k, alpha, a.data(), k, b.data(), n, beta, c1.data(), n);
        for (size_t i = 0; i < c0.size(); ++i)
          CHECK(std::fabs(c0[i] - c1[i]) <=
                1e-12 * (1.0 + std::fabs(c0[i])));
      }
    }
  }
}

TEST_CASE("elementwise kernels agree bit-for-bit") {
  if (!have_avx2()) return;
  const auto& ref = kern::table(kern::Isa::Scalar);
  const auto& fast = kern::table(kern::Isa::Avx2);
  Rng rng(7);
  for (int64_t n : {1, 3, 4, 7, 64, 1001}) {
    auto x = random_vec(rng, n);
    auto y = random_vec(rng, n);
    std::vector<double> o0(static_cast<size_t>(n)), o1(o0);

    ref.add(x.data(), y.data(), o0.data(), n);
    fast.add(x.data(), y.data(), o1.data(), n);
    CHECK(o0 == o1);

    ref.sub(x.data(), y.data(), o0.data(), n);
    fast.sub(x.data(), y.data(), o1.data(), n);
    CHECK(o0 == o1);

    ref.mul(x.data(), y.data(), o0.data(), n);
    fast.mul(x.data(), y.data(), o1.data(), n);
    CHECK(o0 == o1);

    ref.scale(-1.75, x.data(), o0.data(), n);
    fast.scale(-1.75, x.data(), o1.data(), n);
    CHECK(o0 == o1);

    auto y0 = y, y1 = y;
    ref.axpy(0.3, x.data(), y0.data(), n);
    // FMA contraction may round once instead of twice, so allow 1 ulp-ish.
    fast.axpy(0.3, x.data(), y1.data(), n);
    for (int64_t i = 0; i < n; ++i)
      CHECK(std::fabs(y0[i] - y1[i]) <= 1e-15 * (1.0 + std::fabs(y0[i])));
  }
}

TEST_CASE("reduction kernels agree within summation-order slack") {
  if (!have_avx2()) return;
  const auto& ref = kern::table(kern::Isa::Scalar);
  const auto& fast = kern::table(kern::Isa::Avx2);
  Rng rng(99);
  for (int64_t n : {1, 5, 8, 127, 4096}) {
    auto x = random_vec(rng, n);
    auto y = random_vec(rng, n);
    const double s0 = ref.sum(x.data(), n);
    CHECK(std::fabs(s0 - fast.sum(x.data(), n)) <= 1e-12 * (1.0 + std::fabs(s0)));
    const double q0 = ref.sumsq(x.data(), n);
    CHECK(std::fabs(q0 - fast.sumsq(x.data(), n)) <= 1e-12 * (1.0 + q0));
    const double d0 = ref.dot(x.data(), y.data(), n);
    CHECK(std::fabs(d0 - fast.dot(x.data(), y.data(), n)) <=
          1e-12 * (1.0 + std::fabs(d0)));
    CHECK(ref.max_abs(x.data(), n) == fast.max_abs(x.data(), n));
  }
}

TEST_CASE("transpose round-trips") {
  Rng rng(3);
  for (auto [m, n] : {std::pair<int, int>{1, 1}, {3, 17}, {32, 32}, {65, 33}}) {
    auto a = random_vec(rng, m * n);
    std::vector<double> at(static_cast<size_t>(m * n)), back(at);
    kern::transpose(a.data(), at.data(), m, n);
    kern::transpose(at.data(), back.data(), n, m);
    CHECK(a == back);
  }
}

// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0
//
// Tensor and tape behavior. The matmul oracle is an independent triple loop;
// gradients are checked against central finite differences.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "radnet/core/errors.hpp"
#include "radnet/core/fd_check.hpp"
#include "radnet/core/ops.hpp"
#include "radnet/core/random.hpp"
#include "radnet/core/tape.hpp"

using namespace radnet;

namespace {

Tensor random_real(Rng& rng, Shape shape, double lo = -1.0, double hi = 1.0) {
  Tensor t = Tensor::zeros(std::move(shape));
  rng.fill_uniform(t.raw(), lo, hi);
  return t;
}

Tensor random_complex(Rng& rng, Shape shape) {
  Tensor t = Tensor::zeros(std::move(shape), Dtype::Complex128);
  rng.fill_uniform(t.raw(), -1.0, 1.0);
  return t;
}

// O(n^3) element-wise oracle, independent of the gemm path.
std::vector<std::complex<double>> matmul_triple_loop(const Tensor& a,
                                                     const Tensor& b) {
  const int64_t m = a.dim(0), k = a.dim(1), n = b.dim(1);
  std::vector<std::complex<double>> out(static_cast<size_t>(m * n));
  for (int64_t i = 0; i < m; ++i)
    for (int64_t j = 0; j < n; ++j) {
      std::complex<double> s{0.0, 0.0};
      for (int64_t p = 0; p < k; ++p) s += a.cat(i * k + p) * b.cat(p * n + j);
      out[static_cast<size_t>(i * n + j)] = s;
    }
  return out;
}

}  // namespace

TEST_CASE("matmul: identity and permutation cases") {
  Rng rng(1);
  Tensor eye = Tensor::zeros({4, 4});
  for (int i = 0; i < 4; ++i) eye.re()[i * 4 + i] = 1.0;
  Tensor x = random_real(rng, {4, 5});
  Tensor y = ops::matmul(eye, x);
  for (int64_t i = 0; i < x.numel(); ++i) CHECK(y.at(i) == x.at(i));

  Tensor swap = Tensor::from_real({2, 2}, {0, 1, 1, 0});
  Tensor ab = Tensor::from_real({2, 1}, {3.0, -7.0});
  Tensor ba = ops::matmul(swap, ab);
  CHECK(ba.at(0) == -7.0);
  CHECK(ba.at(1) == 3.0);
}

TEST_CASE("matmul: random complex 8x8 against triple-loop oracle") {
  Rng rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    Tensor a = random_complex(rng, {8, 8});
    Tensor b = random_complex(rng, {8, 8});
    Tensor c = ops::matmul(a, b);
    auto ref = matmul_triple_loop(a, b);
    for (int64_t i = 0; i < c.numel(); ++i)
      CHECK(std::abs(c.cat(i) - ref[static_cast<size_t>(i)]) < 1e-12);
  }
}

TEST_CASE("matmul: real x complex promotes") {
  Rng rng(3);
  Tensor a = random_real(rng, {3, 4});
  Tensor b = random_complex(rng, {4, 2});
  Tensor c = ops::matmul(a, b);
  CHECK(c.is_complex());
  auto ref = matmul_triple_loop(a.to_complex(), b);
  for (int64_t i = 0; i < c.numel(); ++i)
    CHECK(std::abs(c.cat(i) - ref[static_cast<size_t>(i)]) < 1e-12);
}

TEST_CASE("matmul: shape mismatch names both shapes") {
  Tensor a = Tensor::zeros({2, 3});
  Tensor b = Tensor::zeros({4, 2});
  try {
    ops::matmul(a, b);
    FAIL("expected ShapeError");
  } catch (const ShapeError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("(2,3)") != std::string::npos);
    CHECK(msg.find("(4,2)") != std::string::npos);
  }
}

TEST_CASE("matmul associativity within 1e-10") {
  Rng rng(4);
  Tensor a = random_real(rng, {8, 8});
  Tensor b = random_real(rng, {8, 8});
  Tensor c = random_real(rng, {8, 8});
  Tensor l = ops::matmul(ops::matmul(a, b), c);
  Tensor r = ops::matmul(a, ops::matmul(b, c));
  for (int64_t i = 0; i < l.numel(); ++i)
    CHECK(std::fabs(l.at(i) - r.at(i)) < 1e-10);
}

TEST_CASE("grad: quadratic") {
  Tape tape;
  Tensor x = Tensor::from_real({2}, {1.0, 2.0});
  tape.watch(x);
  Tensor loss = ops::sum_all(ops::square(x));
  const Tensor params[] = {x};
  auto g = tape.gradients(loss, params);
  CHECK(g[0].at(0) == doctest::Approx(2.0));
  CHECK(g[0].at(1) == doctest::Approx(4.0));
}

TEST_CASE("grad: constant loss gives zeros") {
  Tape tape;
  Tensor x = Tensor::from_real({3}, {1.0, 2.0, 3.0});
  tape.watch(x);
  Tensor loss = Tensor::scalar(5.0);
  // The constant is not a function of x, but it must still be on the tape.
  tape.record(loss, {});
  const Tensor params[] = {x};
  auto g = tape.gradients(loss, params);
  for (int64_t i = 0; i < 3; ++i) CHECK(g[0].at(i) == 0.0);
}

TEST_CASE("grad: contract errors") {
  Tape tape;
  Tensor x = Tensor::from_real({2}, {1.0, 2.0});
  tape.watch(x);
  Tensor not_scalar = ops::square(x);
  const Tensor params[] = {x};
  CHECK_THROWS_AS((void)tape.gradients(not_scalar, params), ContractError);

  Tape tape2;
  Tensor y = Tensor::from_real({2}, {1.0, 2.0});
  tape2.watch(y);
  Tensor loss = ops::sum_all(ops::square(y));
  Tensor off_tape = Tensor::from_real({1}, {0.0});
  const Tensor bad_params[] = {off_tape};
  CHECK_THROWS_AS((void)tape2.gradients(loss, bad_params), ContractError);
}

TEST_CASE("grad: composite matmul + layer_norm + softmax vs FD") {
  Rng rng(5);
  Tensor w = random_real(rng, {6, 6});
  Tensor gamma = Tensor::full({6}, 1.0);
  Tensor beta = Tensor::zeros({6});
  auto f = [&](const Tensor& x) {
    Tensor h = ops::matmul(x, w);
    h = ops::layer_norm(h, gamma, beta);
    h = ops::softmax_lastdim(h);
    return ops::sum_all(ops::square(h));
  };
  Tensor x = random_real(rng, {6, 6});
  CHECK(finite_difference_check(f, x, 1e-6) < 1e-5);
}

TEST_CASE("fd oracle: linear and closed-form cases") {
  Rng rng(6);
  Tensor x = random_real(rng, {10});
  // f = sum is linear, so central differences are exact up to roundoff.
  CHECK(finite_difference_check(
            [](const Tensor& v) { return ops::sum_all(v); }, x, 1e-6) < 1e-9);

  // f = sum(sin): autodiff must reproduce cos(x) (checked via FD).
  CHECK(finite_difference_check(
            [](const Tensor& v) { return ops::sum_all(ops::sin(v)); }, x,
            1e-6) < 1e-6);
  // And directly against the closed form.
  Tape tape;
  Tensor xt = x.clone();
  tape.watch(xt);
  Tensor loss = ops::sum_all(ops::sin(xt));
  const Tensor params[] = {xt};
  auto g = tape.gradients(loss, params);
  for (int64_t i = 0; i < x.numel(); ++i)
    CHECK(g[0].at(i) == doctest::Approx(std::cos(x.at(i))).epsilon(1e-12));
}

TEST_CASE("fd oracle: leaky-modrelu magnitude sum away from origin") {
  Rng rng(7);
  Tensor z = random_complex(rng, {4, 6});
  // Keep |z| away from 0 and |z|+b away from the kink.
  for (int64_t i = 0; i < z.numel(); ++i) {
    const double r = std::hypot(z.re()[i], z.im()[i]);
    if (r < 0.3) {
      z.re()[i] += 0.5;
      z.im()[i] += 0.5;
    }
  }
  Tensor b = Tensor::from_real({4}, {0.1, -0.05, 0.2, 0.0});
  auto f = [&](const Tensor& v) {
    return ops::sum_all(ops::magnitude(ops::leaky_modrelu(v, b, 0.01)));
  };
  CHECK(finite_difference_check(f, z, 1e-6) < 1e-5);
}

TEST_CASE("tape replay is deterministic") {
  Rng rng(8);
  Tensor w = random_real(rng, {5, 5});
  Tensor x = random_real(rng, {5, 5});
  auto run = [&]() {
    Tape tape;
    Tensor wt = w.clone();
    tape.watch(wt);
    Tensor h = ops::softmax_lastdim(ops::matmul(x, wt));
    Tensor loss = ops::mean_all(ops::square(h));
    const Tensor params[] = {wt};
    return tape.gradients(loss, params)[0];
  };
  Tensor g1 = run();
  Tensor g2 = run();
  for (int64_t i = 0; i < g1.numel(); ++i) CHECK(g1.at(i) == g2.at(i));
}

// FD sweeps over every structural op used by the network layers.
TEST_CASE("fd sweep: movement ops") {
  Rng rng(9);
  Tensor x = random_real(rng, {4, 6, 3});
  auto weighted_sum = [&](const Tensor& t, const Tensor& wts) {
    return ops::sum_all(ops::mul(t, ops::reshape(wts, t.shape())));
  };

  auto check = [&](auto&& fn, const Tensor& input, double tol = 1e-6) {
    CHECK(finite_difference_check(fn, input, 1e-6) < tol);
  };

  check([&](const Tensor& v) {
    Rng r2(1);
    Tensor w = random_real(r2, {4 * 6 * 3});
    return weighted_sum(ops::permute(v, {2, 0, 1}), w);
  }, x);
  check([&](const Tensor& v) {
    Rng r2(2);
    Tensor w = random_real(r2, {4 * 2 * 3});
    return weighted_sum(ops::slice(v, 1, 1, 2), w);
  }, x);
  check([&](const Tensor& v) {
    Rng r2(3);
    Tensor w = random_real(r2, {4 * 9 * 3});
    return weighted_sum(ops::pad_axis(v, 1, 2, 1), w);
  }, x);
  check([&](const Tensor& v) {
    Rng r2(4);
    Tensor w = random_real(r2, {4 * 6 * 3});
    return weighted_sum(ops::roll2d(v, -1, 2), w);
  }, x);
  check([&](const Tensor& v) {
    Rng r2(5);
    Tensor w = random_real(r2, {2 * 3 * 12});
    return weighted_sum(ops::space_to_depth2(v), w);
  }, x);
  check([&](const Tensor& v) {
    Rng r2(6);
    Tensor w = random_real(r2, {4 * 2 * 3});
    return weighted_sum(ops::downsample_axis_mean(v, 1, 3), w);
  }, x);
  check([&](const Tensor& v) {
    Rng r2(7);
    Tensor w = random_real(r2, {4 * 12 * 3});
    return weighted_sum(ops::upsample_axis_repeat(v, 1, 2), w);
  }, x);
}

TEST_CASE("fd sweep: window partition/reverse") {
  Rng rng(10);
  Tensor x = random_real(rng, {4, 8, 2});
  Rng r2(11);
  Tensor w = random_real(r2, {8, 4, 2});
  auto f = [&](const Tensor& v) {
    Tensor win = ops::window_partition(v, 2);
    Tensor back = ops::window_reverse(win, 4, 8, 2);
    // Round trip must be the identity.
    Tensor win2 = ops::window_partition(back, 2);
    return ops::sum_all(ops::mul(win2, ops::reshape(w, win2.shape())));
  };
  CHECK(finite_difference_check(f, x, 1e-6) < 1e-6);

  // Identity of the round trip itself.
  Tensor win = ops::window_partition(x, 2);
  Tensor back = ops::window_reverse(win, 4, 8, 2);
  for (int64_t i = 0; i < x.numel(); ++i) CHECK(back.at(i) == x.at(i));
}

TEST_CASE("fd sweep: conv2d and conv_transpose2d") {
  Rng rng(12);
  Tensor x = random_real(rng, {5, 6, 3});
  Tensor w = random_real(rng, {3, 3, 3, 4}, -0.5, 0.5);
  Tensor b = random_real(rng, {4}, -0.1, 0.1);

  auto f_x = [&](const Tensor& v) {
    return ops::sum_all(ops::square(ops::conv2d(v, w, b, 1, 1, 1, 1)));
  };
  CHECK(finite_difference_check(f_x, x, 1e-6) < 1e-5);
  auto f_w = [&](const Tensor& v) {
    return ops::sum_all(ops::square(ops::conv2d(x, v, b, 2, 1, 1, 1)));
  };
  CHECK(finite_difference_check(f_w, w, 1e-6) < 1e-5);

  Tensor dw = random_real(rng, {3, 2, 2, 2}, -0.5, 0.5);
  Tensor db = random_real(rng, {2}, -0.1, 0.1);
  auto g_x = [&](const Tensor& v) {
    return ops::sum_all(ops::square(ops::conv_transpose2d(v, dw, db, 2, 2)));
  };
  CHECK(finite_difference_check(g_x, x, 1e-6) < 1e-5);
  auto g_w = [&](const Tensor& v) {
    return ops::sum_all(ops::square(ops::conv_transpose2d(x, v, db, 2, 2)));
  };
  CHECK(finite_difference_check(g_w, dw, 1e-6) < 1e-5);
}

TEST_CASE("fd sweep: losses") {
  Rng rng(13);
  Tensor p = random_real(rng, {4, 4}, 0.1, 0.9);
  Tensor y = Tensor::zeros({4, 4});
  y.re()[3] = 1.0;
  y.re()[9] = 1.0;

  auto focal = [&](const Tensor& v) {
    return ops::focal_loss_sum(v, y, 0.25, 2.0);
  };
  CHECK(finite_difference_check(focal, p, 1e-7) < 1e-5);

  auto bce = [&](const Tensor& v) { return ops::bce_sum(v, y); };
  CHECK(finite_difference_check(bce, p, 1e-7) < 1e-5);

  Tensor pred = random_real(rng, {3, 3, 2});
  Tensor target = random_real(rng, {3, 3, 2});
  Tensor mask = Tensor::zeros({3, 3});
  mask.re()[1] = 1.0;
  mask.re()[7] = 1.0;
  auto sl1 = [&](const Tensor& v) {
    return ops::smooth_l1_masked(v, target, mask);
  };
  CHECK(finite_difference_check(sl1, pred, 1e-6) < 1e-5);

  Tensor logits = random_real(rng, {3, 3, 5});
  Tensor onehot = Tensor::zeros({3, 3, 5});
  onehot.re()[0 * 5 + 2] = 1.0;
  onehot.re()[4 * 5 + 1] = 1.0;
  auto ce = [&](const Tensor& v) {
    return ops::softmax_ce_masked_sum(v, onehot);
  };
  CHECK(finite_difference_check(ce, logits, 1e-6) < 1e-5);
}

TEST_CASE("fd sweep: complex layer pieces") {
  Rng rng(14);
  Tensor wz = random_complex(rng, {4, 4});
  Tensor x = random_complex(rng, {4, 3});
  auto f = [&](const Tensor& v) {
    Tensor y = ops::matmul(wz, v);
    return ops::sum_all(ops::square(ops::complex_to_channels(y)));
  };
  CHECK(finite_difference_check(f, x, 1e-6) < 1e-5);
  auto fw = [&](const Tensor& v) {
    Tensor y = ops::matmul(v, x);
    return ops::sum_all(ops::square(ops::complex_to_channels(y)));
  };
  CHECK(finite_difference_check(fw, wz, 1e-6) < 1e-5);
}

TEST_CASE("fd sweep: normalization and attention helpers") {
  Rng rng(15);
  Tensor x = random_real(rng, {6, 4});
  // Weighted sum; the plain sum of squares of standardized values is almost
  // constant in x and would make the FD denominator degenerate.
  Tensor wstd = random_real(rng, {6, 4});
  auto std_fn = [&](const Tensor& v) {
    return ops::sum_all(ops::mul(ops::standardize_channels(v, 1e-12), wstd));
  };
  CHECK(finite_difference_check(std_fn, x, 1e-6) < 1e-4);

  Tensor table = random_real(rng, {9, 3});
  auto gat = [&](const Tensor& v) {
    return ops::sum_all(ops::square(ops::gather_rows(v, {0, 4, 4, 8, 2})));
  };
  CHECK(finite_difference_check(gat, table, 1e-6) < 1e-5);

  Tensor scores = random_real(rng, {2, 3, 4, 4});
  Tensor bias = random_real(rng, {3, 4, 4});
  auto ab = [&](const Tensor& v) {
    return ops::sum_all(ops::square(ops::add_bias_bh(scores, v)));
  };
  CHECK(finite_difference_check(ab, bias, 1e-6) < 1e-5);
}

TEST_CASE("tensors stay immutable through ops") {
  Rng rng(16);
  Tensor x = random_real(rng, {3, 3});
  Tensor snapshot = x.clone();
  (void)ops::relu(x);
  (void)ops::scale(x, 2.0);
  (void)ops::matmul(x, x);
  for (int64_t i = 0; i < x.numel(); ++i) CHECK(x.at(i) == snapshot.at(i));
}

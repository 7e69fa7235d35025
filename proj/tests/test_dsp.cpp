// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0
//
// Window, FFT, shift and input-assembly checks. The O(N^2) reference DFT is
// the oracle for the fast path.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "radnet/core/errors.hpp"
#include "radnet/core/random.hpp"
#include "radnet/dsp/fft.hpp"
#include "radnet/dsp/pipeline.hpp"
#include "radnet/dsp/window.hpp"

using namespace radnet;

namespace {

Tensor random_complex(Rng& rng, Shape shape) {
  Tensor t = Tensor::zeros(std::move(shape), Dtype::Complex128);
  rng.fill_uniform(t.raw(), -1.0, 1.0);
  return t;
}

double rel_err(const Tensor& a, const Tensor& b) {
  double num = 0.0, den = 0.0;
  for (int64_t i = 0; i < a.numel(); ++i) {
    num = std::max(num, std::abs(a.cat(i) - b.cat(i)));
    den = std::max(den, std::abs(b.cat(i)));
  }
  return num / std::max(den, 1e-300);
}

}  // namespace

TEST_CASE("hamming: endpoints, midpoint, N=4") {
  auto w = dsp::hamming(8);
  // The endpoint value is the formula's 0.54 - 0.46 exactly.
  CHECK(w[0] == 0.54 - 0.46);
  CHECK(w[7] == doctest::Approx(0.08).epsilon(1e-14));
  CHECK(w[0] == doctest::Approx(0.08).epsilon(1e-14));

  auto w9 = dsp::hamming(9);
  CHECK(w9[4] == doctest::Approx(1.0).epsilon(1e-14));

  auto w4 = dsp::hamming(4);
  CHECK(w4[0] == doctest::Approx(0.08).epsilon(1e-14));
  CHECK(w4[1] == doctest::Approx(0.77).epsilon(1e-14));
  CHECK(w4[2] == doctest::Approx(0.77).epsilon(1e-14));
  CHECK(w4[3] == doctest::Approx(0.08).epsilon(1e-14));

  CHECK_THROWS_AS(dsp::hamming(1), ContractError);
}

TEST_CASE("fft: impulse and constant") {
  Tensor x = Tensor::zeros({4}, Dtype::Complex128);
  x.re()[0] = 1.0;
  Tensor y = dsp::fft_axis(x, 0);
  for (int64_t i = 0; i < 4; ++i) {
    CHECK(y.cat(i).real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(y.cat(i).imag() == doctest::Approx(0.0).epsilon(1e-14));
  }

  Tensor c = Tensor::zeros({4}, Dtype::Complex128);
  for (int64_t i = 0; i < 4; ++i) c.re()[i] = 1.0;
  Tensor yc = dsp::fft_axis(c, 0);
  CHECK(yc.cat(0).real() == doctest::Approx(4.0).epsilon(1e-14));
  for (int64_t i = 1; i < 4; ++i) CHECK(std::abs(yc.cat(i)) < 1e-12);
}

TEST_CASE("fft: random length-64 vs O(N^2) reference") {
  Rng rng(11);
  Tensor x = random_complex(rng, {64});
  CHECK(rel_err(dsp::fft_axis(x, 0), dsp::dft_reference_axis(x, 0)) < 1e-10);
}

TEST_CASE("fft: longer transforms and inner axes vs reference") {
  Rng rng(12);
  Tensor x = random_complex(rng, {16, 8, 4});
  for (int axis = 0; axis < 3; ++axis)
    CHECK(rel_err(dsp::fft_axis(x, axis), dsp::dft_reference_axis(x, axis)) <
          1e-10);

  Tensor v = random_complex(rng, {512});
  CHECK(rel_err(dsp::fft_axis(v, 0), dsp::dft_reference_axis(v, 0)) < 1e-10);
}

TEST_CASE("fft: non-power-of-two falls back to the reference") {
  Rng rng(13);
  Tensor x = random_complex(rng, {12});
  CHECK(rel_err(dsp::fft_axis(x, 0), dsp::dft_reference_axis(x, 0)) == 0.0);
}

TEST_CASE("fftshift: swap, involution") {
  Tensor x = Tensor::zeros({4}, Dtype::Complex128);
  for (int64_t i = 0; i < 4; ++i) x.re()[i] = static_cast<double>(i);
  Tensor s = dsp::fftshift_axis(x, 0);
  CHECK(s.re()[0] == 2.0);
  CHECK(s.re()[1] == 3.0);
  CHECK(s.re()[2] == 0.0);
  CHECK(s.re()[3] == 1.0);

  Rng rng(14);
  Tensor r = random_complex(rng, {8, 6});
  Tensor twice = dsp::fftshift_axis(dsp::fftshift_axis(r, 0), 0);
  for (int64_t i = 0; i < r.numel(); ++i) CHECK(twice.cat(i) == r.cat(i));
}

TEST_CASE("parseval within 1e-8 relative") {
  Rng rng(15);
  for (int64_t n : {64, 256}) {
    Tensor x = random_complex(rng, {n});
    Tensor y = dsp::fft_axis(x, 0);
    const double lhs = dsp::total_power(x);
    const double rhs = dsp::total_power(y) / static_cast<double>(n);
    CHECK(std::fabs(lhs - rhs) / lhs < 1e-8);
  }
}

TEST_CASE("hamming window buys > 10 dB of sidelobe suppression") {
  const int64_t n = 128;
  // Off-grid tone halfway between bins: worst-case leakage.
  Tensor x = Tensor::zeros({n}, Dtype::Complex128);
  const double f = (20.0 + 0.5) / static_cast<double>(n);
  for (int64_t i = 0; i < n; ++i) {
    const double ph = 2.0 * std::numbers::pi * f * static_cast<double>(i);
    x.re()[i] = std::cos(ph);
    x.im()[i] = std::sin(ph);
  }

  auto peak_to_sidelobe_db = [&](const Tensor& spec) {
    int64_t peak_bin = 0;
    double peak = 0.0;
    for (int64_t i = 0; i < n; ++i)
      if (std::abs(spec.cat(i)) > peak) {
        peak = std::abs(spec.cat(i));
        peak_bin = i;
      }
    double side = 0.0;
    for (int64_t i = 0; i < n; ++i) {
      int64_t d = std::abs(i - peak_bin);
      d = std::min(d, n - d);
      if (d <= 3) continue;  // main lobe (same exclusion both cases)
      side = std::max(side, std::abs(spec.cat(i)));
    }
    return 20.0 * std::log10(peak / side);
  };

  const double rect_db = peak_to_sidelobe_db(dsp::fft_axis(x, 0));
  const double ham_db = peak_to_sidelobe_db(
      dsp::fft_axis(dsp::apply_window_axis(x, 0, dsp::hamming(n)), 0));
  CHECK(ham_db - rect_db > 10.0);
}

TEST_CASE("make_rd_input: channel layout and unwindowed equivalence") {
  Rng rng(16);
  Tensor adc = random_complex(rng, {8, 4, 3});
  Tensor rd = dsp::make_rd_input(adc, false, false);
  CHECK(rd.shape() == Shape{8, 4, 6});

  // Equals the raw 2-D reference DFT split into channels.
  Tensor ref = dsp::dft_reference_axis(dsp::dft_reference_axis(adc, 0), 1);
  for (int64_t r = 0; r < 8 * 4; ++r)
    for (int64_t c = 0; c < 3; ++c) {
      const auto z = ref.cat(r * 3 + c);
      CHECK(rd.at(r * 6 + 2 * c) ==
            doctest::Approx(z.real()).epsilon(1e-10));
      CHECK(rd.at(r * 6 + 2 * c + 1) ==
            doctest::Approx(z.imag()).epsilon(1e-10));
    }
}

TEST_CASE("eq-7 normalization: constant output for zero frame, idempotence") {
  Tensor zero = Tensor::zeros({8, 4, 2}, Dtype::Complex128);
  dsp::ChannelStats stats;
  stats.mu = {1.0, -2.0, 0.5, 0.0};
  stats.sigma = {2.0, 4.0, 1.0, 1.0};
  Tensor rd = dsp::make_rd_input(zero, false, false, &stats);
  // Zero spectrum, so every value is -mu_k / sigma_k.
  for (int64_t r = 0; r < 8 * 4; ++r)
    for (int64_t c = 0; c < 4; ++c)
      CHECK(rd.at(r * 4 + c) ==
            doctest::Approx(-stats.mu[c] / stats.sigma[c]).epsilon(1e-12));

  // Re-normalizing an already-normalized tensor with its own stats gives
  // mean 0, std 1 per channel.
  Rng rng(17);
  Tensor adc = random_complex(rng, {16, 8, 2});
  Tensor raw = dsp::make_rd_input(adc, true, true);
  dsp::StatsAccumulator acc(raw.dim(-1));
  acc.add(raw);
  const auto st = acc.finalize();
  Tensor norm = dsp::make_rd_input(adc, true, true, &st);
  dsp::StatsAccumulator acc2(norm.dim(-1));
  acc2.add(norm);
  const auto st2 = acc2.finalize();
  for (size_t c = 0; c < st2.mu.size(); ++c) {
    CHECK(std::fabs(st2.mu[c]) < 1e-10);
    CHECK(std::fabs(st2.sigma[c] - 1.0) < 1e-10);
  }
}

TEST_CASE("make_rad_input: empty scene zero cube, non-negative values") {
  Tensor zero = Tensor::zeros({8, 4, 2}, Dtype::Complex128);
  Tensor cube = dsp::make_rad_input(zero, false, false, false, 8);
  CHECK(cube.shape() == Shape{8, 4, 8});
  for (int64_t i = 0; i < cube.numel(); ++i) CHECK(cube.at(i) == 0.0);

  Rng rng(18);
  Tensor adc = random_complex(rng, {8, 4, 2});
  Tensor c2 = dsp::make_rad_input(adc, true, true, true, 8);
  for (int64_t i = 0; i < c2.numel(); ++i) CHECK(c2.at(i) >= 0.0);
}

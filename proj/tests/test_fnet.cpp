// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0
//
// Learnable-transform layer checks: DFT weight values, initialization
// equivalence against the FFT pipeline, modReLU behavior, gradient flow.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "radnet/core/errors.hpp"
#include "radnet/core/fd_check.hpp"
#include "radnet/core/random.hpp"
#include "radnet/core/tape.hpp"
#include "radnet/dsp/fft.hpp"
#include "radnet/dsp/pipeline.hpp"
#include "radnet/fnet/fourier_net.hpp"
#include "radnet/kernels/kernels.hpp"
#include "radnet/sim/grids.hpp"
#include "radnet/sim/presets.hpp"

using namespace radnet;
using namespace radnet::fnet;

namespace {

Tensor random_complex(Rng& rng, Shape shape) {
  Tensor t = Tensor::zeros(std::move(shape), Dtype::Complex128);
  rng.fill_uniform(t.raw(), -1.0, 1.0);
  return t;
}

double max_rel_err(const Tensor& got, const Tensor& want) {
  double num = 0.0, den = 0.0;
  for (int64_t i = 0; i < got.numel(); ++i) {
    num = std::max(num, std::abs(got.cat(i) - want.cat(i)));
    den = std::max(den, std::abs(want.cat(i)));
  }
  return num / std::max(den, 1e-300);
}

}  // namespace

TEST_CASE("init_dft_weights: 2-point and 4-point values") {
  Tensor w2 = init_dft_weights(2, 2, false);
  CHECK(w2.cat(0) == std::complex<double>{1.0, 0.0});
  CHECK(w2.cat(1) == std::complex<double>{1.0, 0.0});
  CHECK(w2.cat(2) == std::complex<double>{1.0, 0.0});
  CHECK(w2.cat(3).real() == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(std::fabs(w2.cat(3).imag()) < 1e-15);

  Tensor w4 = init_dft_weights(4, 4, false);
  // w(1,1) = exp(-j pi/2) = -j
  CHECK(w4.cat(1 * 4 + 1).real() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(w4.cat(1 * 4 + 1).imag() == doctest::Approx(-1.0).epsilon(1e-15));

  CHECK_THROWS_AS(init_dft_weights(4, 8, false), ContractError);
}

TEST_CASE("unshifted 8x8 layer equals the reference DFT") {
  Rng rng(1);
  ComplexLinearLayer layer(8, 8, false);
  for (int trial = 0; trial < 4; ++trial) {
    Tensor x = random_complex(rng, {8, 1});
    Tensor got = layer.apply(x);
    Tensor want = dsp::dft_reference_axis(x, 0);
    for (int64_t i = 0; i < 8; ++i)
      CHECK(std::abs(got.cat(i) - want.cat(i)) < 1e-12);
  }
}

TEST_CASE("padded layer (M = 2N) equals the length-M DFT of the padded slice") {
  Rng rng(2);
  ComplexLinearLayer layer(16, 8, false);
  Tensor x = random_complex(rng, {8, 2});
  Tensor got = layer.apply(x);
  Tensor padded = ops::pad_axis(x, 0, 0, 8);
  Tensor want = dsp::dft_reference_axis(padded, 0);
  CHECK(max_rel_err(got, want) < 1e-12);
}

TEST_CASE("shifted rows equal fftshift of the unshifted output") {
  Rng rng(3);
  ComplexLinearLayer plain(8, 8, false);
  ComplexLinearLayer shifted(8, 8, true);
  Tensor x = random_complex(rng, {8, 3});
  Tensor a = dsp::fftshift_axis(plain.apply(x), 0);
  Tensor b = shifted.apply(x);
  CHECK(max_rel_err(b, a) < 1e-12);
}

TEST_CASE("leaky_modrelu: identity on positives, defined zero, negative branch") {
  Tensor z = Tensor::zeros({3, 1}, Dtype::Complex128);
  z.re()[0] = 0.6;
  z.im()[0] = -0.8;  // |z| = 1
  z.re()[1] = 0.0;
  z.im()[1] = 0.0;  // the singular point
  z.re()[2] = 1.0;
  z.im()[2] = 0.0;
  Tensor b = Tensor::from_real({3}, {0.0, 0.0, -2.0});
  Tensor f = ops::leaky_modrelu(z, b, 0.01);

  // b = 0, |z| + b > 0: f(z) = z.
  CHECK(f.cat(0).real() == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(f.cat(0).imag() == doctest::Approx(-0.8).epsilon(1e-15));
  // f(0) = 0 by definition.
  CHECK(f.cat(1) == std::complex<double>{0.0, 0.0});
  // |z| + b = -1: LReLU(-1) * z/|z| = -0.01.
  CHECK(f.cat(2).real() == doctest::Approx(-0.01).epsilon(1e-12));
  CHECK(f.cat(2).imag() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("leaky_modrelu preserves phase up to sign") {
  Rng rng(4);
  Tensor z = random_complex(rng, {6, 5});
  Tensor b = Tensor::zeros({6});
  rng.fill_uniform(b.raw(), -0.5, 0.5);
  Tensor f = ops::leaky_modrelu(z, b, 0.01);
  for (int64_t i = 0; i < z.numel(); ++i) {
    const auto zi = z.cat(i);
    const auto fi = f.cat(i);
    if (std::abs(zi) < 1e-12 || std::abs(fi) < 1e-15) continue;
    const double da = std::arg(fi) - std::arg(zi);
    // arg(f) == arg(z) or arg(-z)
    double wrapped = std::fmod(std::fabs(da), std::numbers::pi);
    wrapped = std::min(wrapped, std::numbers::pi - wrapped);
    CHECK(wrapped < 1e-12);
  }
}

TEST_CASE("initialization equivalence: DFT-init net matches unwindowed FFT") {
  sim::Preset p = sim::preset_desk();
  Rng rng(5);
  FourierNetConfig cfg;
  cfg.range_m = cfg.range_n = p.radar.samples_per_chirp;
  cfg.doppler_m = cfg.doppler_n = p.radar.chirps_per_frame;
  cfg.channels = p.radar.virtual_channels();
  cfg.shifted_init = true;
  FourierNet net(cfg);

  for (int trial = 0; trial < 3; ++trial) {
    sim::Scene s = sim::sample_scene(rng, p, trial);
    sim::ADCFrame f = sim::synthesize_adc(s, p.radar, 1000 + trial);
    Tensor learned = net.forward_spectrum(f.samples);
    Tensor reference = dsp::rd_spectrum(f.samples, false, true);
    CHECK(max_rel_err(learned, reference) < 1e-9);
  }
}

TEST_CASE("NL variant is also linear-DFT-equivalent at zero bias") {
  sim::Preset p = sim::preset_desk();
  Rng rng(6);
  FourierNetConfig cfg;
  cfg.range_m = cfg.range_n = p.radar.samples_per_chirp;
  cfg.doppler_m = cfg.doppler_n = p.radar.chirps_per_frame;
  cfg.channels = p.radar.virtual_channels();
  cfg.nonlinearity = Nonlinearity::LeakyModRelu;
  FourierNet net(cfg);
  sim::Scene s = sim::sample_scene(rng, p, 0);
  sim::ADCFrame f = sim::synthesize_adc(s, p.radar, 7);
  Tensor learned = net.forward_spectrum(f.samples);
  Tensor reference = dsp::rd_spectrum(f.samples, false, true);
  CHECK(max_rel_err(learned, reference) < 1e-9);
}

TEST_CASE("zero frame maps to zero pre-normalization output") {
  FourierNetConfig cfg;
  cfg.range_m = cfg.range_n = 8;
  cfg.doppler_m = cfg.doppler_n = 4;
  cfg.channels = 2;
  FourierNet net(cfg);
  Tensor zero = Tensor::zeros({8, 4, 2}, Dtype::Complex128);
  Tensor spec = net.forward_spectrum(zero);
  for (double v : spec.raw()) CHECK(v == 0.0);
}

TEST_CASE("gradient flows through both layers (FD check)") {
  FourierNetConfig cfg;
  cfg.range_m = cfg.range_n = 4;
  cfg.doppler_m = cfg.doppler_n = 4;
  cfg.channels = 1;
  cfg.nonlinearity = Nonlinearity::LeakyModRelu;
  Rng rng(8);
  Tensor adc = random_complex(rng, {4, 4, 1});
  // Keep |z| away from the singular set.
  for (int64_t i = 0; i < adc.numel(); ++i) adc.re()[i] += 2.0;

  FourierNet net(cfg);
  auto f = [&](const Tensor& w) {
    FourierNet local(cfg);
    std::vector<NamedParam> ps;
    local.collect_params(ps);
    // Substitute the watched tensor for the range weights.
    std::copy(w.raw().begin(), w.raw().end(), ps[0].tensor.raw().begin());
    // Rebuild a layer around the watched tensor by multiplying manually.
    Tensor x = ops::reshape(adc, {4, 4});
    Tensor y = ops::matmul(w, x);
    y = ops::leaky_modrelu(y, ps[1].tensor, cfg.leaky_slope);
    Tensor z = ops::permute(ops::reshape(y, {4, 4, 1}), {1, 0, 2});
    z = ops::matmul(ps[2].tensor, ops::reshape(z, {4, 4}));
    z = ops::leaky_modrelu(z, ps[3].tensor, cfg.leaky_slope);
    return ops::sum_all(ops::square(ops::complex_to_channels(z)));
  };
  Tensor w0 = init_dft_weights(4, 4, false);
  CHECK(finite_difference_check(f, w0, 1e-6) < 1e-5);
}

TEST_CASE("normalization layer: train stats vs frozen eval stats") {
  sim::Preset p = sim::preset_desk();
  FourierNetConfig cfg;
  cfg.range_m = cfg.range_n = p.radar.samples_per_chirp;
  cfg.doppler_m = cfg.doppler_n = p.radar.chirps_per_frame;
  cfg.channels = p.radar.virtual_channels();
  FourierNet net(cfg);

  Rng rng(9);
  sim::Scene s = sim::sample_scene(rng, p, 0);
  sim::ADCFrame f = sim::synthesize_adc(s, p.radar, 11);

  Tensor out = net.forward(f.samples, /*train=*/true);
  // Per-channel mean ~0 and variance ~1 on the defining batch.
  const int64_t c = out.dim(-1);
  const int64_t rows = out.numel() / c;
  for (int64_t ch = 0; ch < c; ++ch) {
    double mu = 0.0, var = 0.0;
    for (int64_t r = 0; r < rows; ++r) mu += out.re()[r * c + ch];
    mu /= static_cast<double>(rows);
    for (int64_t r = 0; r < rows; ++r) {
      const double d = out.re()[r * c + ch] - mu;
      var += d * d;
    }
    var /= static_cast<double>(rows);
    CHECK(std::fabs(mu) < 1e-6);
    CHECK(std::fabs(var - 1.0) < 1e-6);
  }

  // Eval mode uses the running stats and is deterministic.
  Tensor e1 = net.forward(f.samples, false);
  Tensor e2 = net.forward(f.samples, false);
  for (size_t i = 0; i < e1.raw().size(); ++i)
    CHECK(e1.raw()[i] == e2.raw()[i]);
}

TEST_CASE("one nonzero training step moves the weights off DFT") {
  FourierNetConfig cfg;
  cfg.range_m = cfg.range_n = 8;
  cfg.doppler_m = cfg.doppler_n = 4;
  cfg.channels = 1;
  FourierNet net(cfg);
  Rng rng(10);
  Tensor adc = random_complex(rng, {8, 4, 1});

  std::vector<NamedParam> ps;
  net.collect_params(ps);
  Tensor w_init = ps[0].tensor.clone();

  Tape tape;
  tape.watch(ps[0].tensor);
  Tensor out = net.forward(adc, true);
  Tensor loss = ops::mean_all(ops::square(out));
  const Tensor params[] = {ps[0].tensor};
  Tensor g = tape.gradients(loss, params)[0];

  // Plain gradient step on (re, im) independently.
  kern::active().axpy(-0.1, g.raw().data(), ps[0].tensor.raw().data(),
                      static_cast<int64_t>(g.raw().size()));
  double fro = 0.0;
  for (size_t i = 0; i < w_init.raw().size(); ++i) {
    const double d = ps[0].tensor.raw()[i] - w_init.raw()[i];
    fro += d * d;
  }
  CHECK(std::sqrt(fro) > 0.0);
}

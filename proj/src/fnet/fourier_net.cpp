// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0

#include "radnet/fnet/fourier_net.hpp"

#include <cmath>
#include <numbers>

#include "radnet/core/errors.hpp"

namespace radnet::fnet {

Tensor init_dft_weights(int64_t m, int64_t n, bool shifted) {
  RN_CHECK(n >= 1 && n <= m, "init_dft_weights: need 1 <= N <= M");
  Tensor w = Tensor::zeros({m, m}, Dtype::Complex128);
  for (int64_t k = 0; k < m; ++k) {
    const int64_t src_row = shifted ? (k + m / 2) % m : k;
    for (int64_t col = 0; col < m; ++col) {
      // k*col is reduced mod M in integer arithmetic to keep the twiddle
      // angle exact for large products.
      const int64_t km = (src_row * col) % m;
      const double ang = -2.0 * std::numbers::pi * static_cast<double>(km) /
                         static_cast<double>(m);
      w.re()[k * m + col] = std::cos(ang);
      w.im()[k * m + col] = std::sin(ang);
    }
  }
  return w;
}

ComplexLinearLayer::ComplexLinearLayer(int64_t m, int64_t n, bool shifted)
    : weights(init_dft_weights(m, n, shifted)),
      bias(Tensor::zeros({m})),
      input_len(n) {}

Tensor ComplexLinearLayer::apply(const Tensor& x) const {
  RN_CHECK(x.is_complex() && x.ndim() == 2,
           "ComplexLinearLayer: expected complex (N, cols)");
  RN_SHAPE_CHECK(x.dim(0) == input_len,
                 "ComplexLinearLayer: input rows " + shape_str(x.shape()) +
                     " vs configured N=" + std::to_string(input_len));
  Tensor padded = x;
  const int64_t m = weights.dim(0);
  if (input_len < m) padded = ops::pad_axis(x, 0, 0, m - input_len);
  return ops::matmul(weights, padded);
}

FourierNet::FourierNet(const FourierNetConfig& cfg)
    : cfg_(cfg),
      // The range layer keeps natural bin order; only the Doppler layer is
      // shift-initialized (zero velocity centered).
      range_(cfg.range_m, cfg.range_n, false),
      doppler_(cfg.doppler_m, cfg.doppler_n, cfg.shifted_init),
      running_mean_(Tensor::zeros({2 * cfg.channels})),
      running_var_(Tensor::full({2 * cfg.channels}, 1.0)) {}

Tensor FourierNet::forward_spectrum(const Tensor& adc) const {
  RN_CHECK(adc.is_complex() && adc.ndim() == 3,
           "FourierNet: expected complex (samples, chirps, channels)");
  RN_SHAPE_CHECK(adc.dim(0) == cfg_.range_n && adc.dim(1) == cfg_.doppler_n &&
                     adc.dim(2) == cfg_.channels,
                 "FourierNet: frame " + shape_str(adc.shape()) +
                     " does not match the configured preset");
  const int64_t ch = cfg_.channels;

  // Range transform along the samples axis.
  Tensor x = ops::reshape(adc, {cfg_.range_n, cfg_.doppler_n * ch});
  x = range_.apply(x);
  if (cfg_.nonlinearity == Nonlinearity::LeakyModRelu)
    x = ops::leaky_modrelu(x, range_.bias, cfg_.leaky_slope);

  // Permute so the chirps axis is contiguous for the Doppler multiply.
  x = ops::reshape(x, {cfg_.range_m, cfg_.doppler_n, ch});
  x = ops::permute(x, {1, 0, 2});
  x = ops::reshape(x, {cfg_.doppler_n, cfg_.range_m * ch});
  x = doppler_.apply(x);
  if (cfg_.nonlinearity == Nonlinearity::LeakyModRelu)
    x = ops::leaky_modrelu(x, doppler_.bias, cfg_.leaky_slope);

  x = ops::reshape(x, {cfg_.doppler_m, cfg_.range_m, ch});
  return ops::permute(x, {1, 0, 2});
}

Tensor FourierNet::forward(const Tensor& adc, bool train_mode) {
  Tensor spec = forward_spectrum(adc);
  Tensor channels = ops::complex_to_channels(spec);

  if (train_mode) {
    std::vector<double> mu, var;
    Tensor out = ops::standardize_channels(channels, 1e-12, &mu, &var);
    const double m = cfg_.norm_momentum;
    for (int64_t c = 0; c < running_mean_.numel(); ++c) {
      running_mean_.re()[c] =
          m * running_mean_.re()[c] + (1.0 - m) * mu[static_cast<size_t>(c)];
      running_var_.re()[c] =
          m * running_var_.re()[c] + (1.0 - m) * var[static_cast<size_t>(c)];
    }
    return out;
  }
  std::vector<double> mu(running_mean_.re(),
                         running_mean_.re() + running_mean_.numel());
  std::vector<double> sigma(static_cast<size_t>(running_var_.numel()));
  for (size_t c = 0; c < sigma.size(); ++c)
    sigma[c] = std::sqrt(running_var_.re()[static_cast<int64_t>(c)] + 1e-12);
  return ops::normalize_with_stats(channels, mu, sigma);
}

void FourierNet::collect_params(std::vector<NamedParam>& out) {
  out.push_back({"fourier.range.weight", range_.weights, true});
  out.push_back({"fourier.range.bias", range_.bias, true});
  out.push_back({"fourier.doppler.weight", doppler_.weights, true});
  out.push_back({"fourier.doppler.bias", doppler_.bias, true});
  out.push_back({"fourier.norm.running_mean", running_mean_, false});
  out.push_back({"fourier.norm.running_var", running_var_, false});
}

}  // namespace radnet::fnet

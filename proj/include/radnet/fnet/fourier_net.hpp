// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "radnet/core/ops.hpp"
#include "radnet/core/tensor.hpp"

namespace radnet::fnet {

// Named module state. Trainable entries receive optimizer updates; the rest
// (running statistics) only ride along in checkpoints.
struct NamedParam {
  std::string name;
  Tensor tensor;
  bool trainable = true;
};

// DFT-initialized weight matrix. Rows 0..M-1 hold the transform outputs; a
// length-N (N <= M) input slice is zero-padded before the multiply, so the
// unshifted matrix reproduces the length-M DFT of the padded slice. When
// shifted, output row r holds pre-shift row (r + M/2) mod M, centering the
// zero-frequency bin like an fftshift.
Tensor init_dft_weights(int64_t m, int64_t n, bool shifted);

enum class Nonlinearity { None, LeakyModRelu };

struct FourierNetConfig {
  int64_t range_m = 64;    // transform size of the range layer
  int64_t range_n = 64;    // input samples per chirp (N <= M)
  int64_t doppler_m = 32;  // transform size of the Doppler layer
  int64_t doppler_n = 32;  // chirps per frame
  int64_t channels = 8;    // virtual antenna channels
  bool shifted_init = true;  // center zero Doppler at initialization
  Nonlinearity nonlinearity = Nonlinearity::None;
  double leaky_slope = 0.01;
  double norm_momentum = 0.99;
};

// M x M complex linear layer with a real per-row bias (used by the
// leaky-modReLU activation).
struct ComplexLinearLayer {
  Tensor weights;  // (M, M) complex
  Tensor bias;     // (M) real, zero-init so the layer starts exactly linear
  int64_t input_len = 0;

  ComplexLinearLayer() = default;
  ComplexLinearLayer(int64_t m, int64_t n, bool shifted);
  // y = W * pad(x) for x of shape (N, cols).
  Tensor apply(const Tensor& x) const;
};

// Learnable replacement for the RD preprocessing: range transform layer,
// Doppler transform layer (with the permutations between them), optional
// phase-preserving nonlinearity, complex-to-channel split, and a
// standardization layer in front of the backbone.
class FourierNet {
 public:
  explicit FourierNet(const FourierNetConfig& cfg);

  // Complex (range_m, doppler_m, channels) spectrum before the channel
  // split and normalization; the tensor the DSP pipeline oracle matches.
  Tensor forward_spectrum(const Tensor& adc) const;

  // Backbone-ready real tensor (range_m, doppler_m, 2*channels). In
  // training mode the normalization uses the sample's own statistics and
  // updates the running ones; in eval mode the frozen running statistics
  // are applied.
  Tensor forward(const Tensor& adc, bool train_mode);

  void collect_params(std::vector<NamedParam>& out);
  const FourierNetConfig& config() const { return cfg_; }
  const ComplexLinearLayer& range_layer() const { return range_; }
  const ComplexLinearLayer& doppler_layer() const { return doppler_; }

 private:
  FourierNetConfig cfg_;
  ComplexLinearLayer range_;
  ComplexLinearLayer doppler_;
  Tensor running_mean_;  // (2*channels)
  Tensor running_var_;
};

}  // namespace radnet::fnet

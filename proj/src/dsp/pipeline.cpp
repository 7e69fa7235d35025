// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0

#include "radnet/dsp/pipeline.hpp"

#include <cmath>
#include <cstdio>

#include "radnet/core/errors.hpp"
#include "radnet/core/ops.hpp"
#include "radnet/dsp/fft.hpp"
#include "radnet/dsp/window.hpp"

namespace radnet::dsp {

StatsAccumulator::StatsAccumulator(int64_t channels)
    : channels_(channels),
      sum_(static_cast<size_t>(channels), 0.0),
      sumsq_(static_cast<size_t>(channels), 0.0) {}

void StatsAccumulator::add(const Tensor& t) {
  RN_CHECK(!t.is_complex(), "StatsAccumulator: real tensors only");
  RN_SHAPE_CHECK(t.dim(-1) == channels_,
                 "StatsAccumulator: channel count mismatch for " +
                     shape_str(t.shape()));
  const int64_t rows = t.numel() / channels_;
  for (int64_t r = 0; r < rows; ++r)
    for (int64_t c = 0; c < channels_; ++c) {
      const double v = t.re()[r * channels_ + c];
      sum_[static_cast<size_t>(c)] += v;
      sumsq_[static_cast<size_t>(c)] += v * v;
    }
  count_ += rows;
}

ChannelStats StatsAccumulator::finalize() const {
  RN_CHECK(count_ > 0, "StatsAccumulator: no data");
  ChannelStats st;
  st.mu.resize(static_cast<size_t>(channels_));
  st.sigma.resize(static_cast<size_t>(channels_));
  const double n = static_cast<double>(count_);
  for (int64_t c = 0; c < channels_; ++c) {
    const double mu = sum_[static_cast<size_t>(c)] / n;
    const double var = sumsq_[static_cast<size_t>(c)] / n - mu * mu;
    double sigma = std::sqrt(std::max(var, 0.0));
    if (sigma < 1e-8) {
      std::fprintf(stderr,
                   "radnet: channel %lld has degenerate std %.3e; clamping "
                   "to 1e-8\n",
                   static_cast<long long>(c), sigma);
      sigma = 1e-8;
    }
    st.mu[static_cast<size_t>(c)] = mu;
    st.sigma[static_cast<size_t>(c)] = sigma;
  }
  return st;
}

Tensor rd_spectrum(const Tensor& adc, bool window, bool shift) {
  RN_CHECK(adc.is_complex() && adc.ndim() == 3,
           "rd_spectrum: expected complex (samples, chirps, channels)");
  Tensor x = adc;
  if (window) {
    x = apply_window_axis(x, 0, hamming(x.dim(0)));
    x = apply_window_axis(x, 1, hamming(x.dim(1)));
  }
  x = fft_axis(x, 0);  // range
  x = fft_axis(x, 1);  // Doppler
  if (shift) x = fftshift_axis(x, 1);
  return x;
}

Tensor make_rd_input(const Tensor& adc, bool window, bool shift,
                     const ChannelStats* stats) {
  Tensor spec = rd_spectrum(adc, window, shift);
  Tensor channels = ops::complex_to_channels(spec);
  if (stats) channels = ops::normalize_with_stats(channels, stats->mu, stats->sigma);
  return channels;
}

Tensor make_rad_input(const Tensor& adc, bool window, bool shift_doppler,
                      bool shift_azimuth, int64_t azimuth_bins,
                      const ChannelStats* stats) {
  RN_CHECK(adc.is_complex() && adc.ndim() == 3,
           "make_rad_input: expected complex (samples, chirps, channels)");
  RN_CHECK(azimuth_bins >= adc.dim(2),
           "make_rad_input: azimuth bins below channel count");
  Tensor x = adc;
  if (window) {
    x = apply_window_axis(x, 0, hamming(x.dim(0)));
    x = apply_window_axis(x, 1, hamming(x.dim(1)));
  }
  x = fft_axis(x, 0);
  x = fft_axis(x, 1);
  if (shift_doppler) x = fftshift_axis(x, 1);
  x = ops::pad_axis(x, 2, 0, azimuth_bins - x.dim(2));
  x = fft_axis(x, 2);  // azimuth over the (padded) virtual array
  if (shift_azimuth) x = fftshift_axis(x, 2);
  Tensor cube = ops::magnitude(x);
  if (stats) {
    RN_CHECK(stats->mu.size() == 1 && stats->sigma.size() == 1,
             "make_rad_input: cube uses single-channel stats");
    // One channel: flatten, normalize, restore.
    const Shape s = cube.shape();
    Tensor flat = cube.reshaped_view({cube.numel(), 1});
    flat = ops::normalize_with_stats(flat, stats->mu, stats->sigma);
    cube = flat.reshaped_view(s);
  }
  return cube;
}

}  // namespace radnet::dsp

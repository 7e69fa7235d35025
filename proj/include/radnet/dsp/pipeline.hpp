// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "radnet/core/tensor.hpp"

namespace radnet::dsp {

// Frozen per-channel normalization constants (computed once over the
// training split and stored with the dataset).
struct ChannelStats {
  std::vector<double> mu;
  std::vector<double> sigma;
};

// Accumulates mean/std over many frames, one entry per trailing channel.
class StatsAccumulator {
 public:
  explicit StatsAccumulator(int64_t channels);
  void add(const Tensor& frame_channels_last);
  // sigma below 1e-8 is replaced by 1e-8 with a warning (degenerate channel).
  ChannelStats finalize() const;

 private:
  int64_t channels_;
  int64_t count_ = 0;
  std::vector<double> sum_, sumsq_;
};

// Frequency-domain RD input: optional Hamming windows on the samples and
// chirps axes, range FFT (axis 0), Doppler FFT (axis 1), optional Doppler
// fftshift, complex parts appended as channels (2i = Re, 2i+1 = Im). If
// stats are given the result is normalized per channel.
Tensor make_rd_input(const Tensor& adc, bool window, bool shift,
                     const ChannelStats* stats = nullptr);

// The complex RD spectrum before the channel split (shared with the RAD
// path and with learned-transform comparisons).
Tensor rd_spectrum(const Tensor& adc, bool window, bool shift);

// RAD cube: range and Doppler FFTs, azimuth FFT over the virtual-channel
// axis zero-padded to `azimuth_bins`, optional Doppler/azimuth shifts, then
// magnitude. Normalization treats the cube as a single channel.
Tensor make_rad_input(const Tensor& adc, bool window, bool shift_doppler,
                      bool shift_azimuth, int64_t azimuth_bins,
                      const ChannelStats* stats = nullptr);

}  // namespace radnet::dsp

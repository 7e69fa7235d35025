// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "radnet/core/tensor.hpp"

namespace radnet::sim {

inline constexpr double kSpeedOfLight = 299792458.0;

// FMCW front-end description. The virtual-array convention is switchable:
// a multiplexed array forms n_tx * n_rx channels, otherwise only the
// receivers are exposed (each channel still gets the ideal array phase).
struct RadarConfig {
  int64_t n_tx = 1;
  int64_t n_rx = 1;
  int64_t samples_per_chirp = 64;  // N
  int64_t chirps_per_frame = 32;   // M_c
  double bandwidth_hz = 150e6;     // B
  double chirp_duration_s = 1e-3;  // T_c
  double sample_rate_hz = 64e3;    // f_s
  double carrier_hz = 5.8e9;       // f_0
  double element_spacing_m = 0.0;  // 0 = lambda/2
  double noise_std = 0.0;          // per re/im component
  bool tx_multiplexed = true;

  int64_t virtual_channels() const {
    return tx_multiplexed ? n_tx * n_rx : n_rx;
  }
  double wavelength() const { return kSpeedOfLight / carrier_hz; }
  double spacing() const {
    return element_spacing_m > 0.0 ? element_spacing_m : 0.5 * wavelength();
  }
  // c / (2B)
  double range_resolution() const {
    return kSpeedOfLight / (2.0 * bandwidth_hz);
  }
  // Beat frequency stays below f_s (complex sampling).
  double max_unambiguous_range() const {
    return sample_rate_hz * kSpeedOfLight * chirp_duration_s /
           (2.0 * bandwidth_hz);
  }
  // lambda / (4 T_c)
  double max_unambiguous_velocity() const {
    return wavelength() / (4.0 * chirp_duration_s);
  }
  double beat_frequency(double range_m) const {
    return 2.0 * bandwidth_hz * range_m / (kSpeedOfLight * chirp_duration_s);
  }
  double doppler_frequency(double velocity_mps) const {
    return 2.0 * velocity_mps / wavelength();
  }
  // Fractional range bin of the (unshifted) range FFT.
  double range_bin(double range_m) const {
    return beat_frequency(range_m) * static_cast<double>(samples_per_chirp) /
           sample_rate_hz;
  }
  // Fractional Doppler bin in the shifted (zero velocity centered) spectrum.
  double doppler_bin_shifted(double velocity_mps) const {
    return static_cast<double>(chirps_per_frame) / 2.0 +
           doppler_frequency(velocity_mps) * chirp_duration_s *
               static_cast<double>(chirps_per_frame);
  }
  // Fractional azimuth bin in the shifted azimuth spectrum with B_A bins.
  double azimuth_bin(double sin_theta, int64_t azimuth_bins) const {
    const double f = spacing() / wavelength() * sin_theta;  // cycles/channel
    return (f + 0.5) * static_cast<double>(azimuth_bins);
  }

  void validate() const;
};

struct Target {
  double range_m = 0.0;
  double velocity_mps = 0.0;
  double azimuth_deg = 0.0;
  double amplitude = 1.0;
  int64_t class_id = 0;
};

struct Scene {
  std::vector<Target> targets;
  int64_t frame_id = 0;
};

struct ADCFrame {
  Tensor samples;  // complex (N, M_c, virtual channels), no normalization
  Scene scene;
};

// Standard narrowband FMCW beat model plus white complex Gaussian noise.
// Deterministic for a fixed (scene, config, seed).
ADCFrame synthesize_adc(const Scene& scene, const RadarConfig& cfg,
                        uint64_t seed);

}  // namespace radnet::sim

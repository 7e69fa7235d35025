// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0

#include "radnet/sim/presets.hpp"

#include "radnet/core/errors.hpp"

namespace radnet::sim {

// HD: 12 Tx / 16 Rx, 256 chirps of 512 samples. Only the receiver channels
// enter the frame (Tx multiplexing is not modeled), so the RD input is
// (512, 256, 2*16). 77 GHz, 0.2 m range cells out to ~102 m.
Preset preset_hd() {
  Preset p;
  p.name = "HD";
  p.radar.n_tx = 12;
  p.radar.n_rx = 16;
  p.radar.tx_multiplexed = false;
  p.radar.samples_per_chirp = 512;
  p.radar.chirps_per_frame = 256;
  p.radar.bandwidth_hz = 750e6;
  p.radar.chirp_duration_s = 51.2e-6;
  p.radar.sample_rate_hz = 10e6;
  p.radar.carrier_hz = 77e9;
  p.radar.noise_std = 0.05;

  p.azimuth_bins = 1024;
  p.range_reduction = 4;
  p.azimuth_reduction = 8;
  p.n_classes = 0;
  p.freespace = true;

  p.embed_dim = 48;
  p.window = 8;
  p.depths = {2, 2, 6, 2};
  p.heads = {3, 6, 12, 24};
  p.decoder_ch = 144;
  p.head_ch = 144;
  p.freespace_ch = 96;

  p.max_targets = 6;
  p.scene_min_range = 5.0;
  p.scene_max_range = 95.0;
  p.scene_max_azimuth_deg = 60.0;
  p.min_separation_bins = 8.0;
  p.classes = {{0.2, 1.0, 0.0, 15.0}};
  return p;
}

// LD: 2 Tx / 4 Rx virtual array, 64 chirps of 256 samples, six classes,
// azimuth padded to 256 bins.
Preset preset_ld() {
  Preset p;
  p.name = "LD";
  p.radar.n_tx = 2;
  p.radar.n_rx = 4;
  p.radar.tx_multiplexed = true;
  p.radar.samples_per_chirp = 256;
  p.radar.chirps_per_frame = 64;
  p.radar.bandwidth_hz = 375e6;
  p.radar.chirp_duration_s = 25.6e-6;
  p.radar.sample_rate_hz = 10e6;
  p.radar.carrier_hz = 77e9;
  p.radar.noise_std = 0.05;

  p.azimuth_bins = 256;
  p.range_reduction = 4;
  p.azimuth_reduction = 2;
  p.n_classes = 6;
  p.freespace = false;

  p.embed_dim = 32;
  p.window = 4;
  p.depths = {2, 2, 4};
  p.heads = {2, 4, 8};
  p.decoder_ch = 64;
  p.head_ch = 64;
  p.freespace_ch = 32;

  p.max_targets = 4;
  p.scene_min_range = 5.0;
  p.scene_max_range = 95.0;
  p.scene_max_azimuth_deg = 50.0;
  p.min_separation_bins = 6.0;
  // Three amplitude bands crossed with two speed bands.
  const double vmax = p.radar.max_unambiguous_velocity();
  for (int64_t k = 0; k < 6; ++k) {
    const double amp_lo[3] = {0.2, 0.45, 0.7};
    const double amp_hi[3] = {0.4, 0.65, 1.0};
    const bool fast = k >= 3;
    p.classes.push_back({amp_lo[k % 3], amp_hi[k % 3],
                         fast ? 0.30 * vmax : 0.0,
                         fast ? 0.60 * vmax : 0.25 * vmax});
  }
  return p;
}

// Desk: small enough for CPU training in minutes. 64 samples, 32 chirps,
// 8 virtual channels, 2 classes, <= 3 targets per frame, 1 m range cells.
Preset preset_desk() {
  Preset p;
  p.name = "desk";
  p.radar.n_tx = 2;
  p.radar.n_rx = 4;
  p.radar.tx_multiplexed = true;
  p.radar.samples_per_chirp = 64;
  p.radar.chirps_per_frame = 32;
  p.radar.bandwidth_hz = 150e6;
  p.radar.chirp_duration_s = 1e-3;
  p.radar.sample_rate_hz = 64e3;
  p.radar.carrier_hz = 5.8e9;
  p.radar.noise_std = 0.02;

  p.azimuth_bins = 32;
  p.range_reduction = 4;
  p.azimuth_reduction = 2;
  p.n_classes = 2;
  p.freespace = false;

  p.embed_dim = 32;
  p.window = 4;
  p.depths = {2, 2, 4};
  p.heads = {2, 4, 8};
  p.decoder_ch = 32;
  p.head_ch = 32;
  p.freespace_ch = 16;

  p.max_targets = 3;
  p.scene_min_range = 4.0;
  p.scene_max_range = 56.0;
  p.scene_max_azimuth_deg = 42.0;
  p.min_separation_bins = 6.0;
  // Slow bright objects vs fast dim ones.
  p.classes = {{0.5, 1.0, 0.0, 3.0}, {0.15, 0.45, 4.0, 10.0}};
  return p;
}

Preset preset_by_name(const std::string& name) {
  if (name == "HD" || name == "hd") return preset_hd();
  if (name == "LD" || name == "ld") return preset_ld();
  if (name == "desk") return preset_desk();
  throw ContractError("unknown preset: " + name + " (expected HD, LD, desk)");
}

}  // namespace radnet::sim

// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "radnet/sim/radar.hpp"

namespace radnet::sim {

// Amplitude / speed band giving each class a learnable signature.
struct ClassSignature {
  double amp_lo, amp_hi;
  double speed_lo, speed_hi;  // |radial velocity| band, m/s
};

// One named configuration: radar front end, RA grid geometry, backbone and
// head dimensions, and scene-generation ranges. Both the model builder and
// the FLOPs counter derive their shapes from this single table.
struct Preset {
  std::string name;
  RadarConfig radar;

  // RA grid geometry.
  int64_t azimuth_bins = 32;     // native azimuth bins B_A (sin-space)
  int64_t range_reduction = 4;   // coarse-grid factors
  int64_t azimuth_reduction = 2;
  int64_t n_classes = 0;         // 0 = binary-only detection (no class head)
  bool freespace = false;        // HD-style free-space segmentation head

  // Backbone.
  int64_t embed_dim = 32;
  int64_t window = 4;
  std::vector<int64_t> depths;
  std::vector<int64_t> heads;

  // Decoder / head channel widths.
  int64_t decoder_ch = 32;
  int64_t head_ch = 32;
  int64_t freespace_ch = 32;

  // Scene generation.
  int64_t max_targets = 3;
  double scene_min_range = 4.0;
  double scene_max_range = 56.0;
  double scene_max_azimuth_deg = 42.0;
  double min_separation_bins = 6.0;  // native bins, per axis
  std::vector<ClassSignature> classes;

  int64_t native_range_bins() const { return radar.samples_per_chirp; }
  int64_t detection_rows() const {
    return native_range_bins() / range_reduction;
  }
  int64_t detection_cols() const { return azimuth_bins / azimuth_reduction; }
  // Eq.-4 style free-space extent: half range, quarter azimuth resolution.
  int64_t freespace_rows() const { return native_range_bins() / 2; }
  int64_t freespace_cols() const { return azimuth_bins / 4; }
  int64_t rd_channels() const { return 2 * radar.virtual_channels(); }
};

Preset preset_hd();
Preset preset_ld();
Preset preset_desk();
Preset preset_by_name(const std::string& name);

}  // namespace radnet::sim

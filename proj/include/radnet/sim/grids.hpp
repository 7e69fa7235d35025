// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "radnet/core/random.hpp"
#include "radnet/sim/presets.hpp"

namespace radnet::sim {

// Training targets on the coarse RA grid.
//   binary      (R, A)     cell occupancy
//   regression  (R, A, 2)  fractional (range, azimuth) offsets in [0, 1)
//   class_onehot(R, A, C)  one-hot at occupied cells (C = n_classes, may be 0)
//   freespace   (R/..,A/..) polar free-space mask at Eq.-4 extents
struct GtGrids {
  Tensor binary;
  Tensor regression;
  Tensor class_onehot;
  Tensor freespace;
};

GtGrids ground_truth_grids(const Scene& scene, const Preset& preset);

// Fractional native-bin coordinates of a target (range, shifted azimuth).
double target_range_bin(const Target& t, const Preset& p);
double target_azimuth_bin(const Target& t, const Preset& p);

// Random scene generator honoring the preset's class signatures and a
// minimum pairwise separation in native bins.
Scene sample_scene(Rng& rng, const Preset& preset, int64_t frame_id);

}  // namespace radnet::sim

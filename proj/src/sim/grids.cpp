// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0

#include "radnet/sim/grids.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "radnet/core/errors.hpp"

namespace radnet::sim {

double target_range_bin(const Target& t, const Preset& p) {
  return p.radar.range_bin(t.range_m);
}

double target_azimuth_bin(const Target& t, const Preset& p) {
  const double s = std::sin(t.azimuth_deg * std::numbers::pi / 180.0);
  return p.radar.azimuth_bin(s, p.azimuth_bins);
}

GtGrids ground_truth_grids(const Scene& scene, const Preset& p) {
  const int64_t rows = p.detection_rows();
  const int64_t cols = p.detection_cols();
  RN_CHECK(p.native_range_bins() % p.range_reduction == 0 &&
               p.azimuth_bins % p.azimuth_reduction == 0,
           "ground_truth_grids: reductions must divide the native bin counts");

  GtGrids g;
  g.binary = Tensor::zeros({rows, cols});
  g.regression = Tensor::zeros({rows, cols, 2});
  g.class_onehot = Tensor::zeros({rows, cols, std::max<int64_t>(p.n_classes, 1)});
  g.freespace = Tensor::zeros({p.freespace_rows(), p.freespace_cols()});

  // Track the occupying amplitude per cell so collisions keep the stronger
  // target.
  Tensor amp = Tensor::zeros({rows, cols});

  for (const Target& t : scene.targets) {
    const double rbin = target_range_bin(t, p);
    const double abin = target_azimuth_bin(t, p);
    const int64_t ri = static_cast<int64_t>(rbin / static_cast<double>(p.range_reduction));
    const int64_t ai = static_cast<int64_t>(abin / static_cast<double>(p.azimuth_reduction));
    RN_CHECK(ri >= 0 && ri < rows && ai >= 0 && ai < cols,
             "ground_truth_grids: target outside the RA grid");
    const int64_t cell = ri * cols + ai;
    if (g.binary.re()[cell] > 0.0) {
      std::fprintf(stderr,
                   "radnet: frame %lld: two targets in coarse cell (%lld,%lld); "
                   "keeping the stronger\n",
                   static_cast<long long>(scene.frame_id),
                   static_cast<long long>(ri), static_cast<long long>(ai));
      if (t.amplitude <= amp.re()[cell]) continue;
    }
    amp.re()[cell] = t.amplitude;
    g.binary.re()[cell] = 1.0;
    g.regression.re()[cell * 2 + 0] =
        (rbin - static_cast<double>(ri * p.range_reduction)) /
        static_cast<double>(p.range_reduction);
    g.regression.re()[cell * 2 + 1] =
        (abin - static_cast<double>(ai * p.azimuth_reduction)) /
        static_cast<double>(p.azimuth_reduction);
    if (p.n_classes > 0) {
      RN_CHECK(t.class_id >= 0 && t.class_id < p.n_classes,
               "ground_truth_grids: class id out of range");
      for (int64_t k = 0; k < p.n_classes; ++k)
        g.class_onehot.re()[cell * p.n_classes + k] =
            (k == t.class_id) ? 1.0 : 0.0;
    }
  }

  // Free space: everything strictly nearer than the first reflector in each
  // azimuth column is free; empty columns are free throughout.
  const int64_t fr = p.freespace_rows(), fc = p.freespace_cols();
  const int64_t az_per_col = p.azimuth_bins / fc;
  const int64_t rng_per_row = p.native_range_bins() / fr;
  std::vector<double> nearest(static_cast<size_t>(fc),
                              static_cast<double>(p.native_range_bins()));
  for (const Target& t : scene.targets) {
    const int64_t col =
        static_cast<int64_t>(target_azimuth_bin(t, p)) / az_per_col;
    if (col < 0 || col >= fc) continue;
    nearest[static_cast<size_t>(col)] =
        std::min(nearest[static_cast<size_t>(col)], target_range_bin(t, p));
  }
  for (int64_t j = 0; j < fc; ++j)
    for (int64_t i = 0; i < fr; ++i)
      g.freespace.re()[i * fc + j] =
          (static_cast<double>(i * rng_per_row) < nearest[static_cast<size_t>(j)])
              ? 1.0
              : 0.0;
  return g;
}

Scene sample_scene(Rng& rng, const Preset& p, int64_t frame_id) {
  RN_CHECK(!p.classes.empty(), "sample_scene: preset has no class signatures");
  Scene scene;
  scene.frame_id = frame_id;
  const int64_t count = rng.uniform_int(1, p.max_targets + 1);
  for (int64_t i = 0; i < count; ++i) {
    for (int attempt = 0; attempt < 100; ++attempt) {
      const int64_t cls = rng.uniform_int(
          0, static_cast<int64_t>(p.classes.size()));
      const ClassSignature& sig = p.classes[static_cast<size_t>(cls)];
      Target t;
      t.class_id = p.n_classes > 0 ? cls : 0;
      t.range_m = rng.uniform(p.scene_min_range, p.scene_max_range);
      t.azimuth_deg = rng.uniform(-p.scene_max_azimuth_deg, p.scene_max_azimuth_deg);
      t.amplitude = rng.uniform(sig.amp_lo, sig.amp_hi);
      const double speed = rng.uniform(sig.speed_lo, sig.speed_hi);
      t.velocity_mps = rng.uniform() < 0.5 ? speed : -speed;

      bool ok = true;
      for (const Target& other : scene.targets) {
        const double dr = std::fabs(target_range_bin(t, p) -
                                    target_range_bin(other, p));
        const double da = std::fabs(target_azimuth_bin(t, p) -
                                    target_azimuth_bin(other, p));
        // Conflict only when close on both axes at once.
        if (dr < p.min_separation_bins && da < p.min_separation_bins) {
          ok = false;
          break;
        }
      }
      if (ok) {
        scene.targets.push_back(t);
        break;
      }
    }
  }
  return scene;
}

}  // namespace radnet::sim

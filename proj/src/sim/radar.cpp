// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0

#include "radnet/sim/radar.hpp"

#include <cmath>
#include <numbers>

#include "radnet/core/errors.hpp"
#include "radnet/core/random.hpp"

namespace radnet::sim {

void RadarConfig::validate() const {
  RN_CHECK(n_tx >= 1 && n_rx >= 1, "radar config: antenna counts must be >= 1");
  RN_CHECK(samples_per_chirp >= 2 && chirps_per_frame >= 2,
           "radar config: frame extents must be >= 2");
  RN_CHECK(bandwidth_hz > 0 && chirp_duration_s > 0 && sample_rate_hz > 0 &&
               carrier_hz > 0,
           "radar config: rates must be positive");
  RN_CHECK(static_cast<double>(samples_per_chirp) <=
               sample_rate_hz * chirp_duration_s + 1e-9,
           "radar config: samples do not fit in a chirp (N > fs*Tc)");
}

ADCFrame synthesize_adc(const Scene& scene, const RadarConfig& cfg,
                        uint64_t seed) {
  cfg.validate();
  const int64_t n = cfg.samples_per_chirp;
  const int64_t mc = cfg.chirps_per_frame;
  const int64_t ch = cfg.virtual_channels();

  for (const Target& t : scene.targets) {
    RN_CHECK(t.range_m > 0.0 && t.range_m < cfg.max_unambiguous_range(),
             "scene: target range outside unambiguous limits");
    RN_CHECK(std::fabs(t.velocity_mps) < cfg.max_unambiguous_velocity(),
             "scene: target velocity outside unambiguous limits");
    RN_CHECK(std::fabs(t.azimuth_deg) < 90.0,
             "scene: target azimuth outside field of view");
  }

  ADCFrame frame;
  frame.scene = scene;
  frame.samples = Tensor::zeros({n, mc, ch}, Dtype::Complex128);
  double* re = frame.samples.re();
  double* im = frame.samples.im();

  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (const Target& t : scene.targets) {
    const double fb_step = cfg.beat_frequency(t.range_m) / cfg.sample_rate_hz;
    const double fd_step =
        cfg.doppler_frequency(t.velocity_mps) * cfg.chirp_duration_s;
    const double az_step =
        cfg.spacing() / cfg.wavelength() *
        std::sin(t.azimuth_deg * std::numbers::pi / 180.0);
    for (int64_t s = 0; s < n; ++s) {
      for (int64_t m = 0; m < mc; ++m) {
        const double base = fb_step * static_cast<double>(s) +
                            fd_step * static_cast<double>(m);
        for (int64_t a = 0; a < ch; ++a) {
          const double phase =
              two_pi * (base + az_step * static_cast<double>(a));
          const int64_t idx = (s * mc + m) * ch + a;
          re[idx] += t.amplitude * std::cos(phase);
          im[idx] += t.amplitude * std::sin(phase);
        }
      }
    }
  }

  if (cfg.noise_std > 0.0) {
    Rng rng(seed);
    const int64_t total = n * mc * ch;
    for (int64_t i = 0; i < total; ++i) {
      re[i] += rng.normal(0.0, cfg.noise_std);
      im[i] += rng.normal(0.0, cfg.noise_std);
    }
  }
  return frame;
}

}  // namespace radnet::sim

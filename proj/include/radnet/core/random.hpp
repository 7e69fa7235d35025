// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace radnet {

// xoshiro256++ with splitmix64 seeding. Self-contained so that streams are
// bit-identical across standard libraries and platforms; normal variates use
// Box-Muller on two fresh uniforms (no cached spare).
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t next_u64();
  // [0, 1)
  double uniform();
  double uniform(double lo, double hi);
  // [lo, hi)
  int64_t uniform_int(int64_t lo, int64_t hi);
  double normal();
  double normal(double mean, double stddev);
  void fill_normal(std::span<double> out, double mean, double stddev);
  void fill_uniform(std::span<double> out, double lo, double hi);

  std::array<uint64_t, 4> state() const { return s_; }
  void set_state(const std::array<uint64_t, 4>& s) { s_ = s; }

 private:
  std::array<uint64_t, 4> s_{};
};

}  // namespace radnet

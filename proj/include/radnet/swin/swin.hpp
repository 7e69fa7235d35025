// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "radnet/core/ops.hpp"
#include "radnet/core/random.hpp"
#include "radnet/fnet/fourier_net.hpp"  // NamedParam

namespace radnet::swin {

using fnet::NamedParam;

struct SwinConfig {
  int64_t in_h = 64;          // input spatial extents (before 2x2 patching)
  int64_t in_w = 32;
  int64_t in_channels = 16;
  int64_t embed_dim = 32;     // C; doubles per stage
  int64_t window = 4;
  std::vector<int64_t> depths{2, 2, 4};
  std::vector<int64_t> heads{2, 4, 8};
  int64_t mlp_ratio = 4;
  bool relative_position_bias = true;
  double dropout = 0.0;  // attention dropout rate (training only)
};

struct LayerNormParams {
  Tensor gamma, beta;
  LayerNormParams() = default;
  explicit LayerNormParams(int64_t c)
      : gamma(Tensor::full({c}, 1.0)), beta(Tensor::zeros({c})) {}
  Tensor apply(const Tensor& x) const {
    return ops::layer_norm(x, gamma, beta);
  }
};

// Per-window multi-head self-attention with learnable relative position
// bias. Operates on already-partitioned windows (NW, T, C); the optional
// additive mask (NW, T, T) forbids attention between tokens that originate
// from non-adjacent regions after a cyclic shift.
class WindowAttention {
 public:
  WindowAttention() = default;
  WindowAttention(int64_t dim, int64_t n_heads, int64_t window, bool use_rpb,
                  Rng& rng);
  Tensor forward(const Tensor& windows, const Tensor& mask, bool train_mode,
                 double dropout, Rng* dropout_rng) const;
  void collect_params(const std::string& prefix, std::vector<NamedParam>& out);

  Tensor wqkv, bqkv, wproj, bproj;
  Tensor rpb_table;  // ((2w-1)^2, heads)

 private:
  int64_t dim_ = 0, heads_ = 0, window_ = 0;
  bool use_rpb_ = true;
  std::vector<int64_t> rpb_index_;  // (T*T) lookup into rpb_table rows
};

// One W-MHSA or SW-MHSA block (Eq.-1 wiring):
//   x = x + Attn(LN(x));  x = x + MLP(LN(x))
class SwinBlock {
 public:
  SwinBlock() = default;
  SwinBlock(int64_t h, int64_t w_extent, int64_t dim, int64_t n_heads,
            int64_t window, bool shifted, int64_t mlp_ratio, bool use_rpb,
            Rng& rng);
  Tensor forward(const Tensor& x, bool train_mode, double dropout,
                 Rng* dropout_rng) const;
  void collect_params(const std::string& prefix, std::vector<NamedParam>& out);

  int64_t shift_h() const { return shift_h_; }
  int64_t shift_w() const { return shift_w_; }
  const Tensor& mask() const { return mask_; }

  LayerNormParams ln1, ln2;
  WindowAttention attn;
  Tensor mlp_w1, mlp_b1, mlp_w2, mlp_b2;

 private:
  int64_t h_ = 0, w_extent_ = 0, window_ = 0;
  int64_t shift_h_ = 0, shift_w_ = 0;
  Tensor mask_;  // (NW, T, T) constant; undefined when no shift
};

// Additive attention mask for a cyclic shift: -1e4 between tokens from
// different wrap regions, 0 otherwise.
Tensor build_shift_mask(int64_t h, int64_t w_extent, int64_t window,
                        int64_t shift_h, int64_t shift_w);

// 2x2 patch embedding: flatten patches to 4*Cin, project to C, LayerNorm.
class PatchEmbed {
 public:
  PatchEmbed() = default;
  PatchEmbed(int64_t in_channels, int64_t dim, Rng& rng);
  Tensor forward(const Tensor& x) const;
  void collect_params(std::vector<NamedParam>& out);

  Tensor proj_w, proj_b;
  LayerNormParams norm;
};

// 2x2 neighborhood concat -> LayerNorm -> linear 4C -> 2C.
class PatchMerging {
 public:
  PatchMerging() = default;
  PatchMerging(int64_t dim, Rng& rng);
  Tensor forward(const Tensor& x) const;
  void collect_params(const std::string& prefix, std::vector<NamedParam>& out);

  LayerNormParams norm;
  Tensor reduce_w;
};

// Hierarchical backbone: stage s runs at extent (H/2^{s+1}, W/2^{s+1}) with
// channel dim C*2^s; returns one feature map per stage.
class SwinBackbone {
 public:
  SwinBackbone() = default;
  SwinBackbone(const SwinConfig& cfg, Rng& rng);
  std::vector<Tensor> forward(const Tensor& x, bool train_mode = false,
                              Rng* dropout_rng = nullptr) const;
  void collect_params(std::vector<NamedParam>& out);
  const SwinConfig& config() const { return cfg_; }
  // Spatial extent and channel count of stage s outputs.
  std::pair<int64_t, int64_t> stage_extent(int stage) const;
  int64_t stage_channels(int stage) const;

 private:
  SwinConfig cfg_;
  PatchEmbed embed_;
  std::vector<std::vector<SwinBlock>> stages_;
  std::vector<PatchMerging> merges_;  // between stages
};

// Attention score entries allocated since the last reset; the hook behind
// the linear-complexity test.
void reset_score_entry_count();
int64_t score_entry_count();

}  // namespace radnet::swin

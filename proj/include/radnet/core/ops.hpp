// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "radnet/core/random.hpp"
#include "radnet/core/tape.hpp"
#include "radnet/core/tensor.hpp"

// Differentiable tensor operations. Every op records itself on the tape of
// its operands (it is an error for operands to sit on different tapes) and
// installs the matching backward rule. Tensors without a tape pass through
// as constants.
namespace radnet::ops {

// ---- shape / movement -----------------------------------------------------

Tensor reshape(const Tensor& x, Shape shape);
Tensor permute(const Tensor& x, const std::vector<int>& perm);
Tensor slice(const Tensor& x, int axis, int64_t start, int64_t len);
Tensor concat_lastdim(const Tensor& a, const Tensor& b);
Tensor pad_axis(const Tensor& x, int axis, int64_t before, int64_t after);
// Cyclic shift of the two leading spatial dims of (H, W, C).
Tensor roll2d(const Tensor& x, int64_t shift_h, int64_t shift_w);
// Non-overlapping w x w windows of (H, W, C): -> (num_windows, w*w, C).
Tensor window_partition(const Tensor& x, int64_t w);
Tensor window_reverse(const Tensor& x, int64_t h, int64_t w_extent, int64_t w);
// 2x2 neighborhood gather of (H, W, C) -> (H/2, W/2, 4C); order is
// (0,0),(0,1),(1,0),(1,1) blocks of C.
Tensor space_to_depth2(const Tensor& x);
// Integer-factor resampling along an axis (box mean down / repeat up).
Tensor downsample_axis_mean(const Tensor& x, int axis, int64_t factor);
Tensor upsample_axis_repeat(const Tensor& x, int axis, int64_t factor);

// ---- arithmetic -------------------------------------------------------------

Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);  // real elementwise
Tensor neg(const Tensor& x);
Tensor scale(const Tensor& x, double a);
Tensor add_scalar(const Tensor& x, double c);
// x[..., C] + b[C]
Tensor bias_add(const Tensor& x, const Tensor& b);

// ---- linear algebra ---------------------------------------------------------

// 2-D matrix product; real/complex, a real operand is promoted when the
// other is complex.
Tensor matmul(const Tensor& a, const Tensor& b);
// Batched over the leading dim: (B,m,k) x (B,k,n) -> (B,m,n). Real only.
Tensor bmm(const Tensor& a, const Tensor& b);
Tensor promote_complex(const Tensor& x);

// ---- reductions -------------------------------------------------------------

Tensor sum_all(const Tensor& x);
Tensor mean_all(const Tensor& x);

// ---- pointwise functions (real) --------------------------------------------

Tensor relu(const Tensor& x);
Tensor leaky_relu(const Tensor& x, double slope);
Tensor gelu(const Tensor& x);
Tensor sigmoid(const Tensor& x);
Tensor exp(const Tensor& x);
Tensor log(const Tensor& x);
Tensor sqrt(const Tensor& x);
Tensor sin(const Tensor& x);
Tensor square(const Tensor& x);
Tensor dropout(const Tensor& x, double rate, Rng& rng);

// ---- normalization / attention ----------------------------------------------

Tensor layer_norm(const Tensor& x, const Tensor& gamma, const Tensor& beta,
                  double eps = 1e-5);
Tensor softmax_lastdim(const Tensor& x);
// Per-channel standardization of (..., C) over all leading positions,
// matching dims of the input. Optionally reports the batch stats it used.
Tensor standardize_channels(const Tensor& x, double eps,
                            std::vector<double>* mean_out = nullptr,
                            std::vector<double>* var_out = nullptr);
// (x - mu[c]) / sigma[c] with fixed statistics (no gradient to the stats).
Tensor normalize_with_stats(const Tensor& x, const std::vector<double>& mu,
                            const std::vector<double>& sigma);
// table (n_entries, C) gathered by row index -> (idx.size(), C).
Tensor gather_rows(const Tensor& table, std::vector<int64_t> idx);
// scores (NW, H, T, T) + bias (H, T, T) broadcast over windows.
Tensor add_bias_bh(const Tensor& scores, const Tensor& bias);
// scores (NW, H, T, T) + mask (NW, T, T) broadcast over heads; the mask is a
// constant (no gradient).
Tensor add_window_mask(const Tensor& scores, const Tensor& mask);

// ---- convolution (H, W, C layout) -------------------------------------------

// w is (kh, kw, Cin, Cout); b is (Cout) or undefined for no bias.
Tensor conv2d(const Tensor& x, const Tensor& w, const Tensor& b, int sh,
              int sw, int ph, int pw);
// w is (Cin, kh, kw, Cout); output extent (H-1)*sh + kh by (W-1)*sw + kw.
Tensor conv_transpose2d(const Tensor& x, const Tensor& w, const Tensor& b,
                        int sh, int sw);

// ---- complex ----------------------------------------------------------------

// (..., C) complex -> (..., 2C) real with channel 2i = Re, 2i+1 = Im.
Tensor complex_to_channels(const Tensor& z);
// f(z) = LReLU(|z| + b) * z/|z| with f(0) = 0; bias indexed by dim-0 row.
Tensor leaky_modrelu(const Tensor& z, const Tensor& bias_rows, double slope);
Tensor magnitude(const Tensor& z);

// ---- losses -----------------------------------------------------------------

// Focal loss summed over all cells of p, y in [0,1]; balance weights the
// positive class, focus is the modulation exponent.
Tensor focal_loss_sum(const Tensor& p, const Tensor& y, double balance,
                      double focus);
// Smooth-L1 of (pred - target), summed over the trailing channel dim and
// averaged over cells where mask > 0. Zero when the mask is empty.
Tensor smooth_l1_masked(const Tensor& pred, const Tensor& target,
                        const Tensor& mask);
// Pixel-wise cross entropy with internal softmax over the last dim, summed
// over pixels; all-zero label rows contribute nothing.
Tensor softmax_ce_masked_sum(const Tensor& logits, const Tensor& onehot);
// Binary cross entropy summed over all elements.
Tensor bce_sum(const Tensor& p, const Tensor& y);

}  // namespace radnet::ops

// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0

#include "radnet/swin/swin.hpp"

#include <cmath>

#include "radnet/core/errors.hpp"

namespace radnet::swin {

namespace {

int64_t g_score_entries = 0;

Tensor normal_init(Shape shape, double std, Rng& rng) {
  Tensor t = Tensor::zeros(std::move(shape));
  rng.fill_normal(t.raw(), 0.0, std);
  return t;
}

}  // namespace

void reset_score_entry_count() { g_score_entries = 0; }
int64_t score_entry_count() { return g_score_entries; }

WindowAttention::WindowAttention(int64_t dim, int64_t n_heads, int64_t window,
                                 bool use_rpb, Rng& rng)
    : wqkv(normal_init({dim, 3 * dim}, 0.02, rng)),
      bqkv(Tensor::zeros({3 * dim})),
      wproj(normal_init({dim, dim}, 0.02, rng)),
      bproj(Tensor::zeros({dim})),
      rpb_table(Tensor::zeros({(2 * window - 1) * (2 * window - 1), n_heads})),
      dim_(dim),
      heads_(n_heads),
      window_(window),
      use_rpb_(use_rpb) {
  RN_CHECK(dim % n_heads == 0, "WindowAttention: heads must divide dim");
  const int64_t t = window * window;
  rpb_index_.resize(static_cast<size_t>(t * t));
  for (int64_t p = 0; p < t; ++p)
    for (int64_t q = 0; q < t; ++q) {
      const int64_t di = p / window - q / window + window - 1;
      const int64_t dj = p % window - q % window + window - 1;
      rpb_index_[static_cast<size_t>(p * t + q)] = di * (2 * window - 1) + dj;
    }
}

Tensor WindowAttention::forward(const Tensor& windows, const Tensor& mask,
                                bool train_mode, double dropout,
                                Rng* dropout_rng) const {
  const int64_t nw = windows.dim(0);
  const int64_t t = windows.dim(1);
  RN_SHAPE_CHECK(t == window_ * window_,
                 "WindowAttention: token count " + shape_str(windows.shape()) +
                     " does not match window " + std::to_string(window_));
  const int64_t c = windows.dim(2);
  const int64_t d = c / heads_;

  Tensor flat = ops::reshape(windows, {nw * t, c});
  Tensor qkv = ops::bias_add(ops::matmul(flat, wqkv), bqkv);
  Tensor q = ops::slice(qkv, 1, 0, c);
  Tensor k = ops::slice(qkv, 1, c, c);
  Tensor v = ops::slice(qkv, 1, 2 * c, c);

  const auto to_heads = [&](const Tensor& x) {
    // (NW*T, C) -> (NW*H, T, d)
    Tensor y = ops::reshape(x, {nw, t, heads_, d});
    y = ops::permute(y, {0, 2, 1, 3});
    return ops::reshape(y, {nw * heads_, t, d});
  };
  Tensor qh = to_heads(q);
  Tensor kh = to_heads(k);
  Tensor vh = to_heads(v);

  Tensor scores =
      ops::scale(ops::bmm(qh, ops::permute(kh, {0, 2, 1})),
                 1.0 / std::sqrt(static_cast<double>(d)));
  g_score_entries += nw * heads_ * t * t;

  scores = ops::reshape(scores, {nw, heads_, t, t});
  if (use_rpb_) {
    Tensor bias = ops::gather_rows(rpb_table, rpb_index_);  // (T*T, H)
    bias = ops::permute(ops::reshape(bias, {t, t, heads_}), {2, 0, 1});
    scores = ops::add_bias_bh(scores, bias);
  }
  if (mask.defined()) scores = ops::add_window_mask(scores, mask);

  Tensor attn = ops::softmax_lastdim(scores);
  if (train_mode && dropout > 0.0 && dropout_rng)
    attn = ops::dropout(attn, dropout, *dropout_rng);

  Tensor ctx = ops::bmm(ops::reshape(attn, {nw * heads_, t, t}), vh);
  ctx = ops::reshape(ctx, {nw, heads_, t, d});
  ctx = ops::permute(ctx, {0, 2, 1, 3});
  ctx = ops::reshape(ctx, {nw * t, c});
  Tensor out = ops::bias_add(ops::matmul(ctx, wproj), bproj);
  return ops::reshape(out, {nw, t, c});
}

void WindowAttention::collect_params(const std::string& prefix,
                                     std::vector<NamedParam>& out) {
  out.push_back({prefix + ".qkv.weight", wqkv, true});
  out.push_back({prefix + ".qkv.bias", bqkv, true});
  out.push_back({prefix + ".proj.weight", wproj, true});
  out.push_back({prefix + ".proj.bias", bproj, true});
  if (use_rpb_) out.push_back({prefix + ".rpb", rpb_table, true});
}

Tensor build_shift_mask(int64_t h, int64_t w_extent, int64_t window,
                        int64_t shift_h, int64_t shift_w) {
  // Region labels on the rolled map; tokens may attend only within equal
  // labels. Three bands per shifted dim: [0, E-w), [E-w, E-s), [E-s, E).
  const auto band = [](int64_t i, int64_t extent, int64_t w, int64_t s) {
    if (s == 0) return int64_t{0};
    if (i < extent - w) return int64_t{0};
    if (i < extent - s) return int64_t{1};
    return int64_t{2};
  };
  Tensor labels = Tensor::zeros({h, w_extent, 1});
  for (int64_t i = 0; i < h; ++i)
    for (int64_t j = 0; j < w_extent; ++j)
      labels.re()[i * w_extent + j] = static_cast<double>(
          band(i, h, window, shift_h) * 3 + band(j, w_extent, window, shift_w));
  Tensor parts = ops::window_partition(labels, window);  // (NW, T, 1)
  const int64_t nw = parts.dim(0), t = parts.dim(1);
  Tensor mask = Tensor::zeros({nw, t, t});
  for (int64_t w = 0; w < nw; ++w)
    for (int64_t p = 0; p < t; ++p)
      for (int64_t q = 0; q < t; ++q)
        mask.re()[(w * t + p) * t + q] =
            parts.re()[w * t + p] == parts.re()[w * t + q] ? 0.0 : -1e4;
  return mask;
}

SwinBlock::SwinBlock(int64_t h, int64_t w_extent, int64_t dim, int64_t n_heads,
                     int64_t window, bool shifted, int64_t mlp_ratio,
                     bool use_rpb, Rng& rng)
    : ln1(dim),
      ln2(dim),
      attn(dim, n_heads, window, use_rpb, rng),
      mlp_w1(normal_init({dim, mlp_ratio * dim}, 0.02, rng)),
      mlp_b1(Tensor::zeros({mlp_ratio * dim})),
      mlp_w2(normal_init({mlp_ratio * dim, dim}, 0.02, rng)),
      mlp_b2(Tensor::zeros({dim})),
      h_(h),
      w_extent_(w_extent),
      window_(window) {
  RN_SHAPE_CHECK(h % window == 0 && w_extent % window == 0,
                 "SwinBlock: extents must be divisible by the window");
  if (shifted) {
    // No shift along a dim the window already spans entirely.
    shift_h_ = h > window ? window / 2 : 0;
    shift_w_ = w_extent > window ? window / 2 : 0;
    if (shift_h_ > 0 || shift_w_ > 0)
      mask_ = build_shift_mask(h, w_extent, window, shift_h_, shift_w_);
  }
}

Tensor SwinBlock::forward(const Tensor& x, bool train_mode, double dropout,
                          Rng* dropout_rng) const {
  RN_SHAPE_CHECK(x.dim(0) == h_ && x.dim(1) == w_extent_,
                 "SwinBlock: input " + shape_str(x.shape()) +
                     " does not match block extent");
  Tensor y = ln1.apply(x);
  if (shift_h_ > 0 || shift_w_ > 0) y = ops::roll2d(y, -shift_h_, -shift_w_);
  Tensor windows = ops::window_partition(y, window_);
  Tensor ctx = attn.forward(windows, mask_, train_mode, dropout, dropout_rng);
  Tensor merged = ops::window_reverse(ctx, h_, w_extent_, window_);
  if (shift_h_ > 0 || shift_w_ > 0)
    merged = ops::roll2d(merged, shift_h_, shift_w_);
  Tensor res = ops::add(x, merged);

  Tensor z = ln2.apply(res);
  Tensor flat = ops::reshape(z, {h_ * w_extent_, z.dim(2)});
  Tensor hmid = ops::gelu(ops::bias_add(ops::matmul(flat, mlp_w1), mlp_b1));
  Tensor mout = ops::bias_add(ops::matmul(hmid, mlp_w2), mlp_b2);
  return ops::add(res, ops::reshape(mout, res.shape()));
}

void SwinBlock::collect_params(const std::string& prefix,
                               std::vector<NamedParam>& out) {
  out.push_back({prefix + ".ln1.gamma", ln1.gamma, true});
  out.push_back({prefix + ".ln1.beta", ln1.beta, true});
  out.push_back({prefix + ".ln2.gamma", ln2.gamma, true});
  out.push_back({prefix + ".ln2.beta", ln2.beta, true});
  attn.collect_params(prefix + ".attn", out);
  out.push_back({prefix + ".mlp.w1", mlp_w1, true});
  out.push_back({prefix + ".mlp.b1", mlp_b1, true});
  out.push_back({prefix + ".mlp.w2", mlp_w2, true});
  out.push_back({prefix + ".mlp.b2", mlp_b2, true});
}

PatchEmbed::PatchEmbed(int64_t in_channels, int64_t dim, Rng& rng)
    : proj_w(normal_init({4 * in_channels, dim}, 0.02, rng)),
      proj_b(Tensor::zeros({dim})),
      norm(dim) {}

Tensor PatchEmbed::forward(const Tensor& x) const {
  RN_SHAPE_CHECK(x.ndim() == 3 && x.dim(0) % 2 == 0 && x.dim(1) % 2 == 0,
                 "patch_embed: need even (H, W, C), got " +
                     shape_str(x.shape()));
  Tensor patches = ops::space_to_depth2(x);  // (H/2, W/2, 4C)
  const int64_t rows = patches.dim(0) * patches.dim(1);
  Tensor flat = ops::reshape(patches, {rows, patches.dim(2)});
  Tensor proj = ops::bias_add(ops::matmul(flat, proj_w), proj_b);
  proj = norm.apply(proj);
  return ops::reshape(proj, {patches.dim(0), patches.dim(1), proj.dim(1)});
}

void PatchEmbed::collect_params(std::vector<NamedParam>& out) {
  out.push_back({"backbone.embed.weight", proj_w, true});
  out.push_back({"backbone.embed.bias", proj_b, true});
  out.push_back({"backbone.embed.ln.gamma", norm.gamma, true});
  out.push_back({"backbone.embed.ln.beta", norm.beta, true});
}

PatchMerging::PatchMerging(int64_t dim, Rng& rng)
    : norm(4 * dim), reduce_w(normal_init({4 * dim, 2 * dim}, 0.02, rng)) {}

Tensor PatchMerging::forward(const Tensor& x) const {
  Tensor patches = ops::space_to_depth2(x);  // (H/2, W/2, 4C)
  const int64_t rows = patches.dim(0) * patches.dim(1);
  Tensor flat = ops::reshape(patches, {rows, patches.dim(2)});
  flat = norm.apply(flat);
  Tensor reduced = ops::matmul(flat, reduce_w);
  return ops::reshape(reduced, {patches.dim(0), patches.dim(1), reduced.dim(1)});
}

void PatchMerging::collect_params(const std::string& prefix,
                                  std::vector<NamedParam>& out) {
  out.push_back({prefix + ".ln.gamma", norm.gamma, true});
  out.push_back({prefix + ".ln.beta", norm.beta, true});
  out.push_back({prefix + ".reduce", reduce_w, true});
}

SwinBackbone::SwinBackbone(const SwinConfig& cfg, Rng& rng) : cfg_(cfg) {
  RN_CHECK(cfg.depths.size() == cfg.heads.size() && !cfg.depths.empty(),
           "SwinBackbone: depths and heads must align");
  embed_ = PatchEmbed(cfg.in_channels, cfg.embed_dim, rng);

  int64_t h = cfg.in_h / 2, w = cfg.in_w / 2, dim = cfg.embed_dim;
  for (size_t s = 0; s < cfg.depths.size(); ++s) {
    RN_SHAPE_CHECK(h % cfg.window == 0 && w % cfg.window == 0,
                   "SwinBackbone: stage " + std::to_string(s) +
                       " extent not divisible by window");
    std::vector<SwinBlock> blocks;
    for (int64_t b = 0; b < cfg.depths[s]; ++b)
      blocks.emplace_back(h, w, dim, cfg.heads[s], cfg.window,
                          /*shifted=*/b % 2 == 1, cfg.mlp_ratio,
                          cfg.relative_position_bias, rng);
    stages_.push_back(std::move(blocks));
    if (s + 1 < cfg.depths.size()) {
      merges_.emplace_back(dim, rng);
      h /= 2;
      w /= 2;
      dim *= 2;
    }
  }
}

std::vector<Tensor> SwinBackbone::forward(const Tensor& x, bool train_mode,
                                          Rng* dropout_rng) const {
  std::vector<Tensor> pyramid;
  Tensor h = embed_.forward(x);
  for (size_t s = 0; s < stages_.size(); ++s) {
    for (const SwinBlock& b : stages_[s])
      h = b.forward(h, train_mode, cfg_.dropout, dropout_rng);
    pyramid.push_back(h);
    if (s < merges_.size()) h = merges_[s].forward(h);
  }
  return pyramid;
}

void SwinBackbone::collect_params(std::vector<NamedParam>& out) {
  embed_.collect_params(out);
  for (size_t s = 0; s < stages_.size(); ++s) {
    for (size_t b = 0; b < stages_[s].size(); ++b)
      stages_[s][b].collect_params(
          "backbone.s" + std::to_string(s) + ".b" + std::to_string(b), out);
    if (s < merges_.size())
      merges_[s].collect_params("backbone.s" + std::to_string(s) + ".merge",
                                out);
  }
}

std::pair<int64_t, int64_t> SwinBackbone::stage_extent(int stage) const {
  int64_t h = cfg_.in_h / 2, w = cfg_.in_w / 2;
  for (int s = 0; s < stage; ++s) {
    h /= 2;
    w /= 2;
  }
  return {h, w};
}

int64_t SwinBackbone::stage_channels(int stage) const {
  int64_t dim = cfg_.embed_dim;
  for (int s = 0; s < stage; ++s) dim *= 2;
  return dim;
}

}  // namespace radnet::swin

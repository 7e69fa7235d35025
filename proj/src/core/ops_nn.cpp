// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <functional>
#include <numbers>

#include "op_common.hpp"
#include "radnet/core/ops.hpp"

namespace radnet::ops {

namespace {

// Elementwise real unary with derivative expressed in terms of (x, y).
Tensor unary(const Tensor& x, const std::function<double(double)>& f,
             std::function<double(double, double)> dfdx) {
  RN_CHECK(!x.is_complex(), "unary op: real tensors only");
  Tensor out = Tensor::zeros(x.shape(), Dtype::Real64);
  const int64_t n = x.numel();
  for (int64_t i = 0; i < n; ++i) out.re()[i] = f(x.re()[i]);

  if (Tape* tape = op_tape({&x})) {
    const int64_t xn = x.node();
    Tensor xv = x, out_ref = out;
    tape->record(out, [xn, xv, out_ref, dfdx = std::move(dfdx)](Tape& t) {
      const Tensor& g = t.grad(out_ref.node());
      Tensor& gx = t.grad_acc(xn);
      const int64_t n = g.numel();
      for (int64_t i = 0; i < n; ++i)
        gx.re()[i] += g.re()[i] * dfdx(xv.re()[i], out_ref.re()[i]);
    });
  }
  return out;
}

}  // namespace

Tensor relu(const Tensor& x) {
  return unary(
      x, [](double v) { return v > 0.0 ? v : 0.0; },
      [](double v, double) { return v > 0.0 ? 1.0 : 0.0; });
}

Tensor leaky_relu(const Tensor& x, double slope) {
  return unary(
      x, [slope](double v) { return v >= 0.0 ? v : slope * v; },
      [slope](double v, double) { return v >= 0.0 ? 1.0 : slope; });
}

Tensor gelu(const Tensor& x) {
  constexpr double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
  const double inv_sqrt2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  return unary(
      x,
      [=](double v) { return 0.5 * v * (1.0 + std::erf(v * inv_sqrt2)); },
      [=](double v, double) {
        return 0.5 * (1.0 + std::erf(v * inv_sqrt2)) +
               v * inv_sqrt2pi * std::exp(-0.5 * v * v);
      });
}

Tensor sigmoid(const Tensor& x) {
  return unary(
      x, [](double v) { return 1.0 / (1.0 + std::exp(-v)); },
      [](double, double y) { return y * (1.0 - y); });
}

Tensor exp(const Tensor& x) {
  return unary(
      x, [](double v) { return std::exp(v); },
      [](double, double y) { return y; });
}

Tensor log(const Tensor& x) {
  return unary(
      x, [](double v) { return std::log(v); },
      [](double v, double) { return 1.0 / v; });
}

Tensor sqrt(const Tensor& x) {
  return unary(
      x, [](double v) { return std::sqrt(v); },
      [](double, double y) { return 0.5 / y; });
}

Tensor sin(const Tensor& x) {
  return unary(
      x, [](double v) { return std::sin(v); },
      [](double v, double) { return std::cos(v); });
}

Tensor square(const Tensor& x) {
  return unary(
      x, [](double v) { return v * v; },
      [](double v, double) { return 2.0 * v; });
}

Tensor dropout(const Tensor& x, double rate, Rng& rng) {
  RN_CHECK(rate >= 0.0 && rate < 1.0, "dropout: rate must be in [0, 1)");
  if (rate == 0.0) return x;
  const double keep = 1.0 - rate;
  Tensor mask = Tensor::zeros(x.shape(), Dtype::Real64);
  for (int64_t i = 0; i < mask.numel(); ++i)
    mask.re()[i] = rng.uniform() < keep ? 1.0 / keep : 0.0;
  return mul(x, mask);
}

Tensor layer_norm(const Tensor& x, const Tensor& gamma, const Tensor& beta,
                  double eps) {
  RN_CHECK(!x.is_complex(), "layer_norm: real tensors only");
  const int64_t c = x.dim(-1);
  RN_SHAPE_CHECK(gamma.ndim() == 1 && gamma.dim(0) == c && beta.ndim() == 1 &&
                     beta.dim(0) == c,
                 "layer_norm: affine params must be (" + std::to_string(c) +
                     ")");
  const int64_t rows = x.numel() / c;

  Tensor out = Tensor::zeros(x.shape(), Dtype::Real64);
  Tensor xhat = Tensor::zeros(x.shape(), Dtype::Real64);
  Tensor rstd = Tensor::zeros({rows}, Dtype::Real64);
  for (int64_t r = 0; r < rows; ++r) {
    const double* xr = x.re() + r * c;
    const double mu = kern::active().sum(xr, c) / static_cast<double>(c);
    double var = 0.0;
    for (int64_t i = 0; i < c; ++i) {
      const double d = xr[i] - mu;
      var += d * d;
    }
    var /= static_cast<double>(c);
    const double rs = 1.0 / std::sqrt(var + eps);
    rstd.re()[r] = rs;
    double* hr = xhat.re() + r * c;
    double* yr = out.re() + r * c;
    for (int64_t i = 0; i < c; ++i) {
      hr[i] = (xr[i] - mu) * rs;
      yr[i] = hr[i] * gamma.re()[i] + beta.re()[i];
    }
  }

  if (Tape* tape = op_tape({&x, &gamma, &beta})) {
    const int64_t xn = x.node(), gn = gamma.node(), bn = beta.node();
    Tensor gv = gamma, out_ref = out;
    tape->record(out, [xn, gn, bn, gv, xhat, rstd, out_ref, rows, c](Tape& t) {
      const Tensor& g = t.grad(out_ref.node());
      if (gn >= 0) {
        Tensor& gg = t.grad_acc(gn);
        for (int64_t r = 0; r < rows; ++r)
          for (int64_t i = 0; i < c; ++i)
            gg.re()[i] += g.re()[r * c + i] * xhat.re()[r * c + i];
      }
      if (bn >= 0) {
        Tensor& gb = t.grad_acc(bn);
        for (int64_t r = 0; r < rows; ++r)
          kern::active().add(gb.re(), g.re() + r * c, gb.re(), c);
      }
      if (xn >= 0) {
        Tensor& gx = t.grad_acc(xn);
        const double invc = 1.0 / static_cast<double>(c);
        for (int64_t r = 0; r < rows; ++r) {
          const double* gr = g.re() + r * c;
          const double* hr = xhat.re() + r * c;
          double mean_dh = 0.0, mean_dh_h = 0.0;
          for (int64_t i = 0; i < c; ++i) {
            const double dh = gr[i] * gv.re()[i];
            mean_dh += dh;
            mean_dh_h += dh * hr[i];
          }
          mean_dh *= invc;
          mean_dh_h *= invc;
          const double rs = rstd.re()[r];
          double* gxr = gx.re() + r * c;
          for (int64_t i = 0; i < c; ++i) {
            const double dh = gr[i] * gv.re()[i];
            gxr[i] += rs * (dh - mean_dh - hr[i] * mean_dh_h);
          }
        }
      }
    });
  }
  return out;
}

Tensor softmax_lastdim(const Tensor& x) {
  RN_CHECK(!x.is_complex(), "softmax: real tensors only");
  const int64_t c = x.dim(-1);
  const int64_t rows = x.numel() / c;
  Tensor out = Tensor::zeros(x.shape(), Dtype::Real64);
  for (int64_t r = 0; r < rows; ++r) {
    const double* xr = x.re() + r * c;
    double* yr = out.re() + r * c;
    double mx = xr[0];
    for (int64_t i = 1; i < c; ++i) mx = std::max(mx, xr[i]);
    double z = 0.0;
    for (int64_t i = 0; i < c; ++i) {
      yr[i] = std::exp(xr[i] - mx);
      z += yr[i];
    }
    const double inv = 1.0 / z;
    for (int64_t i = 0; i < c; ++i) yr[i] *= inv;
  }

  if (Tape* tape = op_tape({&x})) {
    const int64_t xn = x.node();
    Tensor out_ref = out;
    tape->record(out, [xn, out_ref, rows, c](Tape& t) {
      const Tensor& g = t.grad(out_ref.node());
      Tensor& gx = t.grad_acc(xn);
      for (int64_t r = 0; r < rows; ++r) {
        const double* gr = g.re() + r * c;
        const double* yr = out_ref.re() + r * c;
        const double dot = kern::active().dot(gr, yr, c);
        double* gxr = gx.re() + r * c;
        for (int64_t i = 0; i < c; ++i) gxr[i] += yr[i] * (gr[i] - dot);
      }
    });
  }
  return out;
}

Tensor standardize_channels(const Tensor& x, double eps,
                            std::vector<double>* mean_out,
                            std::vector<double>* var_out) {
  RN_CHECK(!x.is_complex(), "standardize_channels: real tensors only");
  const int64_t c = x.dim(-1);
  const int64_t rows = x.numel() / c;
  std::vector<double> mu(static_cast<size_t>(c), 0.0);
  std::vector<double> var(static_cast<size_t>(c), 0.0);
  for (int64_t r = 0; r < rows; ++r)
    for (int64_t i = 0; i < c; ++i) mu[i] += x.re()[r * c + i];
  for (auto& m : mu) m /= static_cast<double>(rows);
  for (int64_t r = 0; r < rows; ++r)
    for (int64_t i = 0; i < c; ++i) {
      const double d = x.re()[r * c + i] - mu[i];
      var[i] += d * d;
    }
  for (auto& v : var) v /= static_cast<double>(rows);
  if (mean_out) *mean_out = mu;
  if (var_out) *var_out = var;

  std::vector<double> rstd(static_cast<size_t>(c));
  for (int64_t i = 0; i < c; ++i) rstd[i] = 1.0 / std::sqrt(var[i] + eps);

  Tensor xhat = Tensor::zeros(x.shape(), Dtype::Real64);
  for (int64_t r = 0; r < rows; ++r)
    for (int64_t i = 0; i < c; ++i)
      xhat.re()[r * c + i] = (x.re()[r * c + i] - mu[i]) * rstd[i];

  if (Tape* tape = op_tape({&x})) {
    const int64_t xn = x.node();
    Tensor out_ref = xhat;
    tape->record(xhat, [xn, out_ref, rows, c, rstd](Tape& t) {
      const Tensor& g = t.grad(out_ref.node());
      Tensor& gx = t.grad_acc(xn);
      const double invr = 1.0 / static_cast<double>(rows);
      // Standard batch-norm backward over the row (position) dimension.
      for (int64_t i = 0; i < c; ++i) {
        double mean_g = 0.0, mean_gh = 0.0;
        for (int64_t r = 0; r < rows; ++r) {
          mean_g += g.re()[r * c + i];
          mean_gh += g.re()[r * c + i] * out_ref.re()[r * c + i];
        }
        mean_g *= invr;
        mean_gh *= invr;
        for (int64_t r = 0; r < rows; ++r)
          gx.re()[r * c + i] +=
              rstd[i] * (g.re()[r * c + i] - mean_g -
                         out_ref.re()[r * c + i] * mean_gh);
      }
    });
  }
  return xhat;
}

Tensor normalize_with_stats(const Tensor& x, const std::vector<double>& mu,
                            const std::vector<double>& sigma) {
  RN_CHECK(!x.is_complex(), "normalize_with_stats: real tensors only");
  const int64_t c = x.dim(-1);
  RN_SHAPE_CHECK(static_cast<int64_t>(mu.size()) == c &&
                     static_cast<int64_t>(sigma.size()) == c,
                 "normalize_with_stats: stats length vs channels " +
                     shape_str(x.shape()));
  const int64_t rows = x.numel() / c;
  Tensor out = Tensor::zeros(x.shape(), Dtype::Real64);
  std::vector<double> inv(static_cast<size_t>(c));
  for (int64_t i = 0; i < c; ++i) inv[i] = 1.0 / sigma[i];
  for (int64_t r = 0; r < rows; ++r)
    for (int64_t i = 0; i < c; ++i)
      out.re()[r * c + i] = (x.re()[r * c + i] - mu[i]) * inv[i];

  if (Tape* tape = op_tape({&x})) {
    const int64_t xn = x.node();
    Tensor out_ref = out;
    tape->record(out, [xn, out_ref, rows, c, inv](Tape& t) {
      const Tensor& g = t.grad(out_ref.node());
      Tensor& gx = t.grad_acc(xn);
      for (int64_t r = 0; r < rows; ++r)
        for (int64_t i = 0; i < c; ++i)
          gx.re()[r * c + i] += g.re()[r * c + i] * inv[i];
    });
  }
  return out;
}

Tensor gather_rows(const Tensor& table, std::vector<int64_t> idx) {
  RN_SHAPE_CHECK(table.ndim() == 2, "gather_rows: table must be 2-D, got " +
                                        shape_str(table.shape()));
  RN_CHECK(!table.is_complex(), "gather_rows: real tensors only");
  const int64_t c = table.dim(1);
  const int64_t n = static_cast<int64_t>(idx.size());
  Tensor out = Tensor::zeros({n, c}, Dtype::Real64);
  for (int64_t i = 0; i < n; ++i) {
    RN_CHECK(idx[i] >= 0 && idx[i] < table.dim(0), "gather_rows: index range");
    std::copy_n(table.re() + idx[i] * c, c, out.re() + i * c);
  }

  if (Tape* tape = op_tape({&table})) {
    const int64_t tn = table.node();
    Tensor out_ref = out;
    tape->record(out, [tn, out_ref, idx = std::move(idx), c](Tape& t) {
      const Tensor& g = t.grad(out_ref.node());
      Tensor& gt = t.grad_acc(tn);
      for (size_t i = 0; i < idx.size(); ++i)
        kern::active().add(gt.re() + idx[i] * c,
                           g.re() + static_cast<int64_t>(i) * c,
                           gt.re() + idx[i] * c, c);
    });
  }
  return out;
}

Tensor add_bias_bh(const Tensor& scores, const Tensor& bias) {
  RN_SHAPE_CHECK(scores.ndim() == 4 && bias.ndim() == 3 &&
                     scores.dim(1) == bias.dim(0) &&
                     scores.dim(2) == bias.dim(1) &&
                     scores.dim(3) == bias.dim(2),
                 "add_bias_bh: " + shape_str(scores.shape()) + " + " +
                     shape_str(bias.shape()));
  const int64_t nw = scores.dim(0);
  const int64_t block = bias.numel();
  Tensor out = scores.clone();
  for (int64_t w = 0; w < nw; ++w)
    kern::active().add(out.re() + w * block, bias.re(), out.re() + w * block,
                       block);

  if (Tape* tape = op_tape({&scores, &bias})) {
    const int64_t sn = scores.node(), bn = bias.node();
    Tensor out_ref = out;
    tape->record(out, [sn, bn, out_ref, nw, block](Tape& t) {
      const Tensor& g = t.grad(out_ref.node());
      if (sn >= 0) grad_add(t.grad_acc(sn), g);
      if (bn >= 0) {
        Tensor& gb = t.grad_acc(bn);
        for (int64_t w = 0; w < nw; ++w)
          kern::active().add(gb.re(), g.re() + w * block, gb.re(), block);
      }
    });
  }
  return out;
}

Tensor add_window_mask(const Tensor& scores, const Tensor& mask) {
  RN_SHAPE_CHECK(scores.ndim() == 4 && mask.ndim() == 3 &&
                     scores.dim(0) == mask.dim(0) &&
                     scores.dim(2) == mask.dim(1) &&
                     scores.dim(3) == mask.dim(2),
                 "add_window_mask: " + shape_str(scores.shape()) + " + " +
                     shape_str(mask.shape()));
  const int64_t nw = scores.dim(0), heads = scores.dim(1);
  const int64_t tt = scores.dim(2) * scores.dim(3);
  Tensor out = scores.clone();
  for (int64_t w = 0; w < nw; ++w)
    for (int64_t h = 0; h < heads; ++h)
      kern::active().add(out.re() + (w * heads + h) * tt, mask.re() + w * tt,
                         out.re() + (w * heads + h) * tt, tt);

  if (Tape* tape = op_tape({&scores})) {
    const int64_t sn = scores.node();
    Tensor out_ref = out;
    tape->record(out, [sn, out_ref](Tape& t) {
      grad_add(t.grad_acc(sn), t.grad(out_ref.node()));
    });
  }
  return out;
}

}  // namespace radnet::ops

// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0

#include <vector>

#include "op_common.hpp"
#include "radnet/core/ops.hpp"

namespace radnet::ops {

namespace {

// x (H, W, C) -> col (Ho*Wo, kh*kw*C) with zero padding.
void im2col(const double* x, int64_t h, int64_t w, int64_t c, int64_t kh,
            int64_t kw, int64_t sh, int64_t sw, int64_t ph, int64_t pw,
            int64_t ho, int64_t wo, double* col) {
  const int64_t k = kh * kw * c;
  for (int64_t i = 0; i < ho; ++i) {
    for (int64_t j = 0; j < wo; ++j) {
      double* dst = col + (i * wo + j) * k;
      for (int64_t dy = 0; dy < kh; ++dy) {
        const int64_t y = i * sh + dy - ph;
        for (int64_t dx = 0; dx < kw; ++dx) {
          const int64_t xx = j * sw + dx - pw;
          double* d = dst + (dy * kw + dx) * c;
          if (y < 0 || y >= h || xx < 0 || xx >= w) {
            for (int64_t ci = 0; ci < c; ++ci) d[ci] = 0.0;
          } else {
            const double* s = x + (y * w + xx) * c;
            for (int64_t ci = 0; ci < c; ++ci) d[ci] = s[ci];
          }
        }
      }
    }
  }
}

// Transpose of im2col: scatter col-shaped gradients back onto the image.
void col2im_add(const double* col, int64_t h, int64_t w, int64_t c, int64_t kh,
                int64_t kw, int64_t sh, int64_t sw, int64_t ph, int64_t pw,
                int64_t ho, int64_t wo, double* x) {
  const int64_t k = kh * kw * c;
  for (int64_t i = 0; i < ho; ++i) {
    for (int64_t j = 0; j < wo; ++j) {
      const double* src = col + (i * wo + j) * k;
      for (int64_t dy = 0; dy < kh; ++dy) {
        const int64_t y = i * sh + dy - ph;
        if (y < 0 || y >= h) continue;
        for (int64_t dx = 0; dx < kw; ++dx) {
          const int64_t xx = j * sw + dx - pw;
          if (xx < 0 || xx >= w) continue;
          const double* s = src + (dy * kw + dx) * c;
          double* d = x + (y * w + xx) * c;
          for (int64_t ci = 0; ci < c; ++ci) d[ci] += s[ci];
        }
      }
    }
  }
}

}  // namespace

Tensor conv2d(const Tensor& x, const Tensor& w, const Tensor& b, int sh,
              int sw, int ph, int pw) {
  RN_SHAPE_CHECK(x.ndim() == 3 && w.ndim() == 4,
                 "conv2d: expected x (H,W,C) and w (kh,kw,Cin,Cout), got " +
                     shape_str(x.shape()) + " and " + shape_str(w.shape()));
  RN_SHAPE_CHECK(w.dim(2) == x.dim(2),
                 "conv2d: channel mismatch " + shape_str(x.shape()) + " vs " +
                     shape_str(w.shape()));
  RN_CHECK(!x.is_complex() && !w.is_complex(), "conv2d: real tensors only");

  const int64_t h = x.dim(0), wd = x.dim(1), cin = x.dim(2);
  const int64_t kh = w.dim(0), kw = w.dim(1), cout = w.dim(3);
  const int64_t ho = (h + 2 * ph - kh) / sh + 1;
  const int64_t wo = (wd + 2 * pw - kw) / sw + 1;
  RN_SHAPE_CHECK(ho > 0 && wo > 0, "conv2d: empty output for input " +
                                       shape_str(x.shape()));
  const int64_t p = ho * wo, k = kh * kw * cin;

  Tensor col = Tensor::zeros({p, k}, Dtype::Real64);
  im2col(x.re(), h, wd, cin, kh, kw, sh, sw, ph, pw, ho, wo, col.re());

  Tensor out = Tensor::zeros({ho, wo, cout}, Dtype::Real64);
  kern::active().gemm(p, cout, k, 1.0, col.re(), k, w.re(), cout, 0.0,
                      out.re(), cout);
  if (b.defined()) {
    RN_SHAPE_CHECK(b.ndim() == 1 && b.dim(0) == cout,
                   "conv2d: bias shape " + shape_str(b.shape()));
    for (int64_t r = 0; r < p; ++r)
      kern::active().add(out.re() + r * cout, b.re(), out.re() + r * cout,
                         cout);
  }

  if (Tape* tape = op_tape({&x, &w, &b})) {
    const int64_t xn = x.node(), wn = w.node(),
                  bn = b.defined() ? b.node() : -1;
    Tensor wv = w, out_ref = out;
    const Shape xs = x.shape();
    tape->record(out, [=](Tape& t) {
      const Tensor& g = t.grad(out_ref.node());
      if (bn >= 0) {
        Tensor& gb = t.grad_acc(bn);
        for (int64_t r = 0; r < p; ++r)
          kern::active().add(gb.re(), g.re() + r * cout, gb.re(), cout);
      }
      if (wn >= 0) {
        Tensor& gw = t.grad_acc(wn);
        std::vector<double> colt(static_cast<size_t>(k * p));
        kern::transpose(col.re(), colt.data(), p, k);
        kern::active().gemm(k, cout, p, 1.0, colt.data(), p, g.re(), cout, 1.0,
                            gw.re(), cout);
      }
      if (xn >= 0) {
        Tensor& gx = t.grad_acc(xn);
        std::vector<double> wt(static_cast<size_t>(cout * k));
        kern::transpose(wv.re(), wt.data(), k, cout);
        std::vector<double> dcol(static_cast<size_t>(p * k));
        kern::active().gemm(p, k, cout, 1.0, g.re(), cout, wt.data(), k, 0.0,
                            dcol.data(), k);
        col2im_add(dcol.data(), xs[0], xs[1], xs[2], kh, kw, sh, sw, ph, pw,
                   ho, wo, gx.re());
      }
    });
  }
  return out;
}

Tensor conv_transpose2d(const Tensor& x, const Tensor& w, const Tensor& b,
                        int sh, int sw) {
  RN_SHAPE_CHECK(x.ndim() == 3 && w.ndim() == 4 && w.dim(0) == x.dim(2),
                 "conv_transpose2d: expected x (H,W,Cin), w (Cin,kh,kw,Cout); "
                 "got " + shape_str(x.shape()) + " and " + shape_str(w.shape()));
  RN_CHECK(!x.is_complex() && !w.is_complex(),
           "conv_transpose2d: real tensors only");

  const int64_t h = x.dim(0), wd = x.dim(1), cin = x.dim(2);
  const int64_t kh = w.dim(1), kw = w.dim(2), cout = w.dim(3);
  const int64_t ho = (h - 1) * sh + kh;
  const int64_t wo = (wd - 1) * sw + kw;
  const int64_t p = h * wd, k = kh * kw * cout;

  // y = x_mat (P, Cin) * w_mat (Cin, kh*kw*Cout), then scatter.
  Tensor y = Tensor::zeros({p, k}, Dtype::Real64);
  kern::active().gemm(p, k, cin, 1.0, x.re(), cin, w.re(), k, 0.0, y.re(), k);

  Tensor out = Tensor::zeros({ho, wo, cout}, Dtype::Real64);
  for (int64_t i = 0; i < h; ++i)
    for (int64_t j = 0; j < wd; ++j) {
      const double* src = y.re() + (i * wd + j) * k;
      for (int64_t dy = 0; dy < kh; ++dy)
        for (int64_t dx = 0; dx < kw; ++dx) {
          double* d = out.re() + ((i * sh + dy) * wo + (j * sw + dx)) * cout;
          const double* s = src + (dy * kw + dx) * cout;
          for (int64_t ci = 0; ci < cout; ++ci) d[ci] += s[ci];
        }
    }
  if (b.defined()) {
    RN_SHAPE_CHECK(b.ndim() == 1 && b.dim(0) == cout,
                   "conv_transpose2d: bias shape " + shape_str(b.shape()));
    for (int64_t r = 0; r < ho * wo; ++r)
      kern::active().add(out.re() + r * cout, b.re(), out.re() + r * cout,
                         cout);
  }

  if (Tape* tape = op_tape({&x, &w, &b})) {
    const int64_t xn = x.node(), wn = w.node(),
                  bn = b.defined() ? b.node() : -1;
    Tensor xv = x, wv = w, out_ref = out;
    tape->record(out, [=](Tape& t) {
      const Tensor& g = t.grad(out_ref.node());
      if (bn >= 0) {
        Tensor& gb = t.grad_acc(bn);
        for (int64_t r = 0; r < ho * wo; ++r)
          kern::active().add(gb.re(), g.re() + r * cout, gb.re(), cout);
      }
      // Gather the output gradient into the (P, kh*kw*Cout) layout once.
      std::vector<double> gcol(static_cast<size_t>(p * k));
      for (int64_t i = 0; i < h; ++i)
        for (int64_t j = 0; j < wd; ++j) {
          double* dst = gcol.data() + (i * wd + j) * k;
          for (int64_t dy = 0; dy < kh; ++dy)
            for (int64_t dx = 0; dx < kw; ++dx) {
              const double* s =
                  g.re() + ((i * sh + dy) * wo + (j * sw + dx)) * cout;
              double* d = dst + (dy * kw + dx) * cout;
              for (int64_t ci = 0; ci < cout; ++ci) d[ci] = s[ci];
            }
        }
      if (xn >= 0) {
        Tensor& gx = t.grad_acc(xn);
        std::vector<double> wt(static_cast<size_t>(k * cin));
        kern::transpose(wv.re(), wt.data(), cin, k);
        kern::active().gemm(p, cin, k, 1.0, gcol.data(), k, wt.data(), cin,
                            1.0, gx.re(), cin);
      }
      if (wn >= 0) {
        Tensor& gw = t.grad_acc(wn);
        std::vector<double> xt(static_cast<size_t>(cin * p));
        kern::transpose(xv.re(), xt.data(), p, cin);
        kern::active().gemm(cin, k, p, 1.0, xt.data(), p, gcol.data(), k, 1.0,
                            gw.re(), k);
      }
    });
  }
  return out;
}

}  // namespace radnet::ops

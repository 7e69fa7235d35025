// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <numeric>

#include "op_common.hpp"
#include "radnet/core/ops.hpp"

namespace radnet::ops {

namespace {

std::vector<int64_t> row_strides(const Shape& s) {
  std::vector<int64_t> st(s.size(), 1);
  for (int i = static_cast<int>(s.size()) - 2; i >= 0; --i)
    st[i] = st[i + 1] * s[i + 1];
  return st;
}

// Plane-wise gather: out[i] = in[map(i)] for each stored plane.
template <class IndexFn>
Tensor gather_by_index(const Tensor& x, Shape out_shape, IndexFn&& src_index) {
  Tensor out = Tensor::zeros(std::move(out_shape), x.dtype());
  const int64_t n = out.numel();
  const int64_t planes = x.is_complex() ? 2 : 1;
  const double* src = x.raw().data();
  double* dst = out.raw().data();
  const int64_t in_n = x.numel();
  for (int64_t i = 0; i < n; ++i) {
    const int64_t j = src_index(i);
    for (int64_t p = 0; p < planes; ++p) dst[i + p * n] = src[j + p * in_n];
  }
  return out;
}

}  // namespace

Tensor reshape(const Tensor& x, Shape shape) {
  Tensor out = x.reshaped_view(std::move(shape));
  if (Tape* tape = op_tape({&x})) {
    const int64_t xn = x.node();
    Tensor out_ref = out;
    tape->record(out, [xn, out_ref](Tape& t) {
      // Same buffer layout, so the gradient just flows through flat.
      const Tensor& g = t.grad(out_ref.node());
      Tensor& gx = t.grad_acc(xn);
      add_into(gx, g.raw().data(), static_cast<int64_t>(g.raw().size()));
    });
  }
  return out;
}

Tensor permute(const Tensor& x, const std::vector<int>& perm) {
  const Shape& in_shape = x.shape();
  RN_SHAPE_CHECK(perm.size() == in_shape.size(),
                 "permute: rank mismatch for shape " + shape_str(in_shape));
  Shape out_shape(perm.size());
  for (size_t i = 0; i < perm.size(); ++i)
    out_shape[i] = in_shape[static_cast<size_t>(perm[i])];

  const auto in_st = row_strides(in_shape);
  const auto out_st = row_strides(out_shape);
  const int rank = static_cast<int>(perm.size());

  Tensor out = gather_by_index(x, out_shape, [&](int64_t i) {
    int64_t rem = i, j = 0;
    for (int d = 0; d < rank; ++d) {
      const int64_t c = rem / out_st[d];
      rem -= c * out_st[d];
      j += c * in_st[static_cast<size_t>(perm[d])];
    }
    return j;
  });

  if (Tape* tape = op_tape({&x})) {
    std::vector<int> inv(perm.size());
    for (size_t i = 0; i < perm.size(); ++i)
      inv[static_cast<size_t>(perm[i])] = static_cast<int>(i);
    const int64_t xn = x.node();
    Tensor out_ref = out;
    tape->record(out, [xn, inv, out_ref](Tape& t) {
      const Tensor gp = permute(t.grad(out_ref.node()), inv);
      grad_add(t.grad_acc(xn), gp);
    });
  }
  return out;
}

Tensor slice(const Tensor& x, int axis, int64_t start, int64_t len) {
  const Shape& s = x.shape();
  if (axis < 0) axis += static_cast<int>(s.size());
  RN_SHAPE_CHECK(axis >= 0 && axis < static_cast<int>(s.size()),
                 "slice: bad axis for " + shape_str(s));
  RN_SHAPE_CHECK(start >= 0 && len >= 0 && start + len <= s[axis],
                 "slice: range out of bounds for " + shape_str(s));

  Shape out_shape = s;
  out_shape[axis] = len;
  const auto in_st = row_strides(s);
  const auto out_st = row_strides(out_shape);
  const int rank = static_cast<int>(s.size());

  Tensor out = gather_by_index(x, out_shape, [&](int64_t i) {
    int64_t rem = i, j = 0;
    for (int d = 0; d < rank; ++d) {
      int64_t c = rem / out_st[d];
      rem -= c * out_st[d];
      if (d == axis) c += start;
      j += c * in_st[d];
    }
    return j;
  });

  if (Tape* tape = op_tape({&x})) {
    const int64_t xn = x.node();
    Tensor out_ref = out;
    const Shape in_shape = s;
    tape->record(out, [xn, out_ref, axis, start, in_shape](Tape& t) {
      const Tensor& g = t.grad(out_ref.node());
      Tensor& gx = t.grad_acc(xn);
      const auto in_st = row_strides(in_shape);
      const auto out_st = row_strides(g.shape());
      const int rank = static_cast<int>(in_shape.size());
      const int64_t n = g.numel();
      const int64_t planes = g.is_complex() ? 2 : 1;
      const int64_t in_n = gx.numel();
      for (int64_t i = 0; i < n; ++i) {
        int64_t rem = i, j = 0;
        for (int d = 0; d < rank; ++d) {
          int64_t c = rem / out_st[d];
          rem -= c * out_st[d];
          if (d == axis) c += start;
          j += c * in_st[d];
        }
        for (int64_t p = 0; p < planes; ++p)
          gx.raw()[j + p * in_n] += g.raw()[i + p * n];
      }
    });
  }
  return out;
}

Tensor concat_lastdim(const Tensor& a, const Tensor& b) {
  const Shape& sa = a.shape();
  const Shape& sb = b.shape();
  RN_SHAPE_CHECK(sa.size() == sb.size() && sa.size() >= 1,
                 "concat: rank mismatch " + shape_str(sa) + " vs " +
                     shape_str(sb));
  for (size_t i = 0; i + 1 < sa.size(); ++i)
    RN_SHAPE_CHECK(sa[i] == sb[i], "concat: leading extents differ " +
                                       shape_str(sa) + " vs " + shape_str(sb));
  RN_CHECK(a.is_complex() == b.is_complex(), "concat: dtype mismatch");

  Shape out_shape = sa;
  const int64_t ca = sa.back(), cb = sb.back();
  out_shape.back() = ca + cb;
  Tensor out = Tensor::zeros(out_shape, a.dtype());
  const int64_t rows = a.numel() / std::max<int64_t>(ca, 1);
  const int64_t planes = a.is_complex() ? 2 : 1;
  for (int64_t p = 0; p < planes; ++p) {
    const double* pa = a.raw().data() + p * a.numel();
    const double* pb = b.raw().data() + p * b.numel();
    double* po = out.raw().data() + p * out.numel();
    for (int64_t r = 0; r < rows; ++r) {
      std::copy_n(pa + r * ca, ca, po + r * (ca + cb));
      std::copy_n(pb + r * cb, cb, po + r * (ca + cb) + ca);
    }
  }

  if (Tape* tape = op_tape({&a, &b})) {
    const int64_t an = a.node(), bn = b.node();
    Tensor out_ref = out;
    tape->record(out, [an, bn, ca, cb, out_ref](Tape& t) {
      const Tensor& g = t.grad(out_ref.node());
      const int rank = g.ndim();
      if (an >= 0) grad_add(t.grad_acc(an), slice(g, rank - 1, 0, ca));
      if (bn >= 0) grad_add(t.grad_acc(bn), slice(g, rank - 1, ca, cb));
    });
  }
  return out;
}

Tensor pad_axis(const Tensor& x, int axis, int64_t before, int64_t after) {
  const Shape& s = x.shape();
  if (axis < 0) axis += static_cast<int>(s.size());
  RN_SHAPE_CHECK(axis >= 0 && axis < static_cast<int>(s.size()),
                 "pad_axis: bad axis for " + shape_str(s));
  RN_CHECK(before >= 0 && after >= 0, "pad_axis: negative padding");

  Shape out_shape = s;
  out_shape[axis] += before + after;
  Tensor out = Tensor::zeros(out_shape, x.dtype());

  const auto in_st = row_strides(s);
  const auto out_st = row_strides(out_shape);
  const int rank = static_cast<int>(s.size());
  const int64_t n = x.numel();
  const int64_t planes = x.is_complex() ? 2 : 1;
  const int64_t out_n = out.numel();
  for (int64_t i = 0; i < n; ++i) {
    int64_t rem = i, j = 0;
    for (int d = 0; d < rank; ++d) {
      int64_t c = rem / in_st[d];
      rem -= c * in_st[d];
      if (d == axis) c += before;
      j += c * out_st[d];
    }
    for (int64_t p = 0; p < planes; ++p)
      out.raw()[j + p * out_n] = x.raw()[i + p * n];
  }

  if (Tape* tape = op_tape({&x})) {
    const int64_t xn = x.node();
    const int64_t len = s[axis];
    Tensor out_ref = out;
    tape->record(out, [xn, axis, before, len, out_ref](Tape& t) {
      grad_add(t.grad_acc(xn), slice(t.grad(out_ref.node()), axis, before, len));
    });
  }
  return out;
}

Tensor roll2d(const Tensor& x, int64_t shift_h, int64_t shift_w) {
  const Shape& s = x.shape();
  RN_SHAPE_CHECK(s.size() == 3, "roll2d: expected (H, W, C), got " +
                                    shape_str(s));
  const int64_t h = s[0], w = s[1], c = s[2];
  const auto mod = [](int64_t a, int64_t m) { return ((a % m) + m) % m; };
  const int64_t sh = mod(shift_h, h), sw = mod(shift_w, w);

  Tensor out = gather_by_index(x, s, [&](int64_t i) {
    const int64_t ch = i % c;
    const int64_t col = (i / c) % w;
    const int64_t row = i / (c * w);
    const int64_t src_row = mod(row - sh, h);
    const int64_t src_col = mod(col - sw, w);
    return (src_row * w + src_col) * c + ch;
  });

  if (Tape* tape = op_tape({&x})) {
    const int64_t xn = x.node();
    Tensor out_ref = out;
    tape->record(out, [xn, shift_h, shift_w, out_ref](Tape& t) {
      grad_add(t.grad_acc(xn), roll2d(t.grad(out_ref.node()), -shift_h, -shift_w));
    });
  }
  return out;
}

Tensor window_partition(const Tensor& x, int64_t w) {
  const Shape& s = x.shape();
  RN_SHAPE_CHECK(s.size() == 3, "window_partition: expected (H, W, C), got " +
                                    shape_str(s));
  const int64_t h = s[0], wd = s[1], c = s[2];
  RN_SHAPE_CHECK(h % w == 0 && wd % w == 0,
                 "window_partition: extents " + shape_str(s) +
                     " not divisible by window " + std::to_string(w));
  const int64_t nwh = h / w, nww = wd / w;
  Shape out_shape{nwh * nww, w * w, c};

  Tensor out = gather_by_index(x, out_shape, [&](int64_t i) {
    const int64_t ch = i % c;
    const int64_t tok = (i / c) % (w * w);
    const int64_t win = i / (c * w * w);
    const int64_t wr = win / nww, wc = win % nww;
    const int64_t row = wr * w + tok / w;
    const int64_t col = wc * w + tok % w;
    return (row * wd + col) * c + ch;
  });

  if (Tape* tape = op_tape({&x})) {
    const int64_t xn = x.node();
    Tensor out_ref = out;
    tape->record(out, [xn, h, wd, w, out_ref](Tape& t) {
      grad_add(t.grad_acc(xn), window_reverse(t.grad(out_ref.node()), h, wd, w));
    });
  }
  return out;
}

Tensor window_reverse(const Tensor& x, int64_t h, int64_t w_extent, int64_t w) {
  const Shape& s = x.shape();
  RN_SHAPE_CHECK(s.size() == 3 && s[1] == w * w &&
                     s[0] == (h / w) * (w_extent / w),
                 "window_reverse: bad input " + shape_str(s));
  const int64_t c = s[2];
  const int64_t nww = w_extent / w;
  Shape out_shape{h, w_extent, c};

  Tensor out = gather_by_index(x, out_shape, [&](int64_t i) {
    const int64_t ch = i % c;
    const int64_t col = (i / c) % w_extent;
    const int64_t row = i / (c * w_extent);
    const int64_t win = (row / w) * nww + col / w;
    const int64_t tok = (row % w) * w + col % w;
    return (win * w * w + tok) * c + ch;
  });

  if (Tape* tape = op_tape({&x})) {
    const int64_t xn = x.node();
    Tensor out_ref = out;
    tape->record(out, [xn, w, out_ref](Tape& t) {
      grad_add(t.grad_acc(xn), window_partition(t.grad(out_ref.node()), w));
    });
  }
  return out;
}

Tensor space_to_depth2(const Tensor& x) {
  const Shape& s = x.shape();
  RN_SHAPE_CHECK(s.size() == 3 && s[0] % 2 == 0 && s[1] % 2 == 0,
                 "space_to_depth2: need even (H, W, C), got " + shape_str(s));
  const int64_t h = s[0], w = s[1], c = s[2];
  Shape out_shape{h / 2, w / 2, 4 * c};

  Tensor out = gather_by_index(x, out_shape, [&](int64_t i) {
    const int64_t ch = i % (4 * c);
    const int64_t col = (i / (4 * c)) % (w / 2);
    const int64_t row = i / (4 * c * (w / 2));
    const int64_t block = ch / c;  // (dy, dx) = (block/2, block%2)
    const int64_t cc = ch % c;
    const int64_t src_row = row * 2 + block / 2;
    const int64_t src_col = col * 2 + block % 2;
    return (src_row * w + src_col) * c + cc;
  });

  if (Tape* tape = op_tape({&x})) {
    const int64_t xn = x.node();
    Tensor out_ref = out;
    const Shape in_shape = s;
    tape->record(out, [xn, out_ref, in_shape](Tape& t) {
      const Tensor& g = t.grad(out_ref.node());
      Tensor& gx = t.grad_acc(xn);
      const int64_t w = in_shape[1], c = in_shape[2];
      const int64_t n = g.numel();
      for (int64_t i = 0; i < n; ++i) {
        const int64_t ch = i % (4 * c);
        const int64_t col = (i / (4 * c)) % (w / 2);
        const int64_t row = i / (4 * c * (w / 2));
        const int64_t block = ch / c;
        const int64_t cc = ch % c;
        const int64_t src_row = row * 2 + block / 2;
        const int64_t src_col = col * 2 + block % 2;
        gx.raw()[(src_row * w + src_col) * c + cc] += g.raw()[i];
      }
    });
  }
  return out;
}

Tensor downsample_axis_mean(const Tensor& x, int axis, int64_t factor) {
  const Shape& s = x.shape();
  if (axis < 0) axis += static_cast<int>(s.size());
  RN_SHAPE_CHECK(axis >= 0 && axis < static_cast<int>(s.size()) &&
                     s[axis] % factor == 0,
                 "downsample_axis_mean: axis/factor mismatch for " +
                     shape_str(s));
  RN_CHECK(!x.is_complex(), "downsample_axis_mean: real tensors only");

  Shape out_shape = s;
  out_shape[axis] = s[axis] / factor;
  int64_t inner = 1, outer = 1;
  for (int d = axis + 1; d < static_cast<int>(s.size()); ++d) inner *= s[d];
  for (int d = 0; d < axis; ++d) outer *= s[d];
  const int64_t n_in = s[axis], n_out = n_in / factor;

  Tensor out = Tensor::zeros(out_shape, Dtype::Real64);
  const double inv = 1.0 / static_cast<double>(factor);
  for (int64_t o = 0; o < outer; ++o)
    for (int64_t j = 0; j < n_out; ++j)
      for (int64_t f = 0; f < factor; ++f) {
        const double* src = x.re() + (o * n_in + j * factor + f) * inner;
        double* dst = out.re() + (o * n_out + j) * inner;
        for (int64_t i = 0; i < inner; ++i) dst[i] += src[i] * inv;
      }

  if (Tape* tape = op_tape({&x})) {
    const int64_t xn = x.node();
    Tensor out_ref = out;
    tape->record(out, [xn, axis, factor, out_ref](Tape& t) {
      grad_add(t.grad_acc(xn),
               scale(upsample_axis_repeat(t.grad(out_ref.node()), axis, factor),
                     1.0 / static_cast<double>(factor)));
    });
  }
  return out;
}

Tensor upsample_axis_repeat(const Tensor& x, int axis, int64_t factor) {
  const Shape& s = x.shape();
  if (axis < 0) axis += static_cast<int>(s.size());
  RN_SHAPE_CHECK(axis >= 0 && axis < static_cast<int>(s.size()),
                 "upsample_axis_repeat: bad axis for " + shape_str(s));
  RN_CHECK(!x.is_complex(), "upsample_axis_repeat: real tensors only");

  Shape out_shape = s;
  out_shape[axis] = s[axis] * factor;
  int64_t inner = 1, outer = 1;
  for (int d = axis + 1; d < static_cast<int>(s.size()); ++d) inner *= s[d];
  for (int d = 0; d < axis; ++d) outer *= s[d];
  const int64_t n_in = s[axis];

  Tensor out = Tensor::zeros(out_shape, Dtype::Real64);
  for (int64_t o = 0; o < outer; ++o)
    for (int64_t j = 0; j < n_in; ++j)
      for (int64_t f = 0; f < factor; ++f)
        std::copy_n(x.re() + (o * n_in + j) * inner, inner,
                    out.re() + ((o * n_in + j) * factor + f) * inner);

  if (Tape* tape = op_tape({&x})) {
    const int64_t xn = x.node();
    Tensor out_ref = out;
    const Shape in_shape = s;
    tape->record(out, [xn, axis, factor, out_ref, in_shape](Tape& t) {
      const Tensor& g = t.grad(out_ref.node());
      Tensor& gx = t.grad_acc(xn);
      int64_t inner = 1, outer = 1;
      for (int d = axis + 1; d < static_cast<int>(in_shape.size()); ++d)
        inner *= in_shape[d];
      for (int d = 0; d < axis; ++d) outer *= in_shape[d];
      const int64_t n_in = in_shape[axis];
      for (int64_t o = 0; o < outer; ++o)
        for (int64_t j = 0; j < n_in; ++j)
          for (int64_t f = 0; f < factor; ++f) {
            const double* src = g.re() + ((o * n_in + j) * factor + f) * inner;
            double* dst = gx.re() + (o * n_in + j) * inner;
            for (int64_t i = 0; i < inner; ++i) dst[i] += src[i];
          }
    });
  }
  return out;
}

}  // namespace radnet::ops

// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "op_common.hpp"
#include "radnet/core/ops.hpp"

namespace radnet::ops {

Tensor complex_to_channels(const Tensor& z) {
  RN_CHECK(z.is_complex(), "complex_to_channels: complex input required");
  const int64_t c = z.dim(-1);
  const int64_t rows = z.numel() / c;
  Shape out_shape = z.shape();
  out_shape.back() = 2 * c;
  Tensor out = Tensor::zeros(out_shape, Dtype::Real64);
  for (int64_t r = 0; r < rows; ++r)
    for (int64_t i = 0; i < c; ++i) {
      out.re()[r * 2 * c + 2 * i] = z.re()[r * c + i];
      out.re()[r * 2 * c + 2 * i + 1] = z.im()[r * c + i];
    }

  if (Tape* tape = op_tape({&z})) {
    const int64_t zn = z.node();
    Tensor out_ref = out;
    tape->record(out, [zn, out_ref, rows, c](Tape& t) {
      const Tensor& g = t.grad(out_ref.node());
      Tensor& gz = t.grad_acc(zn);
      for (int64_t r = 0; r < rows; ++r)
        for (int64_t i = 0; i < c; ++i) {
          gz.re()[r * c + i] += g.re()[r * 2 * c + 2 * i];
          gz.im()[r * c + i] += g.re()[r * 2 * c + 2 * i + 1];
        }
    });
  }
  return out;
}

// f(z) = LReLU(|z| + b) * z / |z|, with f(0) = 0 by definition. The bias is
// indexed by the dim-0 row of z (one bias per transform output bin). At the
// |z| + b = 0 kink the derivative from the positive side is used.
Tensor leaky_modrelu(const Tensor& z, const Tensor& bias_rows, double slope) {
  RN_CHECK(z.is_complex(), "leaky_modrelu: complex input required");
  RN_SHAPE_CHECK(bias_rows.ndim() == 1 && bias_rows.dim(0) == z.dim(0),
                 "leaky_modrelu: bias " + shape_str(bias_rows.shape()) +
                     " vs input " + shape_str(z.shape()));
  RN_CHECK(!bias_rows.is_complex(), "leaky_modrelu: bias must be real");

  const int64_t m = z.dim(0);
  const int64_t cols = z.numel() / m;
  Tensor out = Tensor::zeros(z.shape(), Dtype::Complex128);
  for (int64_t r = 0; r < m; ++r) {
    const double b = bias_rows.re()[r];
    for (int64_t j = 0; j < cols; ++j) {
      const int64_t i = r * cols + j;
      const double x = z.re()[i], y = z.im()[i];
      const double rad = std::hypot(x, y);
      if (rad == 0.0) continue;  // f(0) = 0
      const double u = rad + b;
      const double s = u >= 0.0 ? u : slope * u;
      const double h = s / rad;
      out.re()[i] = h * x;
      out.im()[i] = h * y;
    }
  }

  if (Tape* tape = op_tape({&z, &bias_rows})) {
    const int64_t zn = z.node(), bn = bias_rows.node();
    Tensor zv = z, bv = bias_rows, out_ref = out;
    tape->record(out, [zn, bn, zv, bv, out_ref, m, cols, slope](Tape& t) {
      const Tensor& g = t.grad(out_ref.node());
      Tensor* gz = zn >= 0 ? &t.grad_acc(zn) : nullptr;
      Tensor* gb = bn >= 0 ? &t.grad_acc(bn) : nullptr;
      for (int64_t r = 0; r < m; ++r) {
        const double b = bv.re()[r];
        double gb_acc = 0.0;
        for (int64_t j = 0; j < cols; ++j) {
          const int64_t i = r * cols + j;
          const double x = zv.re()[i], y = zv.im()[i];
          const double rad = std::hypot(x, y);
          if (rad == 0.0) continue;  // defined value, zero gradient
          const double u = rad + b;
          const double sp = u >= 0.0 ? 1.0 : slope;
          const double s = u >= 0.0 ? u : slope * u;
          const double h = s / rad;
          const double hp = (sp * rad - s) / (rad * rad);
          const double gre = g.re()[i], gim = g.im()[i];
          const double common = x * gre + y * gim;
          if (gz) {
            gz->re()[i] += h * gre + (hp / rad) * common * x;
            gz->im()[i] += h * gim + (hp / rad) * common * y;
          }
          gb_acc += sp * common / rad;
        }
        if (gb) gb->re()[r] += gb_acc;
      }
    });
  }
  return out;
}

Tensor magnitude(const Tensor& z) {
  RN_CHECK(z.is_complex(), "magnitude: complex input required");
  Tensor out = Tensor::zeros(z.shape(), Dtype::Real64);
  const int64_t n = z.numel();
  for (int64_t i = 0; i < n; ++i) out.re()[i] = std::hypot(z.re()[i], z.im()[i]);

  if (Tape* tape = op_tape({&z})) {
    const int64_t zn = z.node();
    Tensor zv = z, out_ref = out;
    tape->record(out, [zn, zv, out_ref, n](Tape& t) {
      const Tensor& g = t.grad(out_ref.node());
      Tensor& gz = t.grad_acc(zn);
      for (int64_t i = 0; i < n; ++i) {
        const double r = out_ref.re()[i];
        if (r == 0.0) continue;
        gz.re()[i] += g.re()[i] * zv.re()[i] / r;
        gz.im()[i] += g.re()[i] * zv.im()[i] / r;
      }
    });
  }
  return out;
}

}  // namespace radnet::ops

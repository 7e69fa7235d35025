// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0

#include <cstring>

#include "op_common.hpp"
#include "radnet/core/ops.hpp"

namespace radnet::ops {

namespace {

void check_same_shape(const Tensor& a, const Tensor& b, const char* who) {
  RN_SHAPE_CHECK(a.shape() == b.shape(),
                 std::string(who) + ": shape mismatch " + shape_str(a.shape()) +
                     " vs " + shape_str(b.shape()));
  RN_CHECK(a.is_complex() == b.is_complex(),
           std::string(who) + ": dtype mismatch");
}

}  // namespace

Tensor add(const Tensor& a, const Tensor& b) {
  check_same_shape(a, b, "add");
  Tensor out = Tensor::zeros(a.shape(), a.dtype());
  kern::active().add(a.raw().data(), b.raw().data(), out.raw().data(),
                     static_cast<int64_t>(out.raw().size()));
  if (Tape* tape = op_tape({&a, &b})) {
    const int64_t an = a.node(), bn = b.node();
    Tensor out_ref = out;
    tape->record(out, [an, bn, out_ref](Tape& t) {
      const Tensor& g = t.grad(out_ref.node());
      if (an >= 0) grad_add(t.grad_acc(an), g);
      if (bn >= 0) grad_add(t.grad_acc(bn), g);
    });
  }
  return out;
}

Tensor sub(const Tensor& a, const Tensor& b) {
  check_same_shape(a, b, "sub");
  Tensor out = Tensor::zeros(a.shape(), a.dtype());
  kern::active().sub(a.raw().data(), b.raw().data(), out.raw().data(),
                     static_cast<int64_t>(out.raw().size()));
  if (Tape* tape = op_tape({&a, &b})) {
    const int64_t an = a.node(), bn = b.node();
    Tensor out_ref = out;
    tape->record(out, [an, bn, out_ref](Tape& t) {
      const Tensor& g = t.grad(out_ref.node());
      if (an >= 0) grad_add(t.grad_acc(an), g);
      if (bn >= 0) {
        Tensor& gb = t.grad_acc(bn);
        kern::active().axpy(-1.0, g.raw().data(), gb.raw().data(),
                            static_cast<int64_t>(gb.raw().size()));
      }
    });
  }
  return out;
}

Tensor mul(const Tensor& a, const Tensor& b) {
  check_same_shape(a, b, "mul");
  RN_CHECK(!a.is_complex(), "mul: real tensors only");
  Tensor out = Tensor::zeros(a.shape(), Dtype::Real64);
  kern::active().mul(a.raw().data(), b.raw().data(), out.raw().data(),
                     out.numel());
  if (Tape* tape = op_tape({&a, &b})) {
    const int64_t an = a.node(), bn = b.node();
    Tensor av = a, bv = b, out_ref = out;
    tape->record(out, [an, bn, av, bv, out_ref](Tape& t) {
      const Tensor& g = t.grad(out_ref.node());
      const int64_t n = g.numel();
      if (an >= 0) {
        Tensor tmp = Tensor::zeros(g.shape(), Dtype::Real64);
        kern::active().mul(g.raw().data(), bv.raw().data(), tmp.raw().data(), n);
        grad_add(t.grad_acc(an), tmp);
      }
      if (bn >= 0) {
        Tensor tmp = Tensor::zeros(g.shape(), Dtype::Real64);
        kern::active().mul(g.raw().data(), av.raw().data(), tmp.raw().data(), n);
        grad_add(t.grad_acc(bn), tmp);
      }
    });
  }
  return out;
}

Tensor scale(const Tensor& x, double a) {
  Tensor out = Tensor::zeros(x.shape(), x.dtype());
  kern::active().scale(a, x.raw().data(), out.raw().data(),
                       static_cast<int64_t>(out.raw().size()));
  if (Tape* tape = op_tape({&x})) {
    const int64_t xn = x.node();
    Tensor out_ref = out;
    tape->record(out, [xn, a, out_ref](Tape& t) {
      const Tensor& g = t.grad(out_ref.node());
      Tensor& gx = t.grad_acc(xn);
      kern::active().axpy(a, g.raw().data(), gx.raw().data(),
                          static_cast<int64_t>(gx.raw().size()));
    });
  }
  return out;
}

Tensor neg(const Tensor& x) { return scale(x, -1.0); }

Tensor add_scalar(const Tensor& x, double c) {
  RN_CHECK(!x.is_complex(), "add_scalar: real tensors only");
  Tensor out = x.clone();
  for (double& v : out.raw()) v += c;
  if (Tape* tape = op_tape({&x})) {
    const int64_t xn = x.node();
    Tensor out_ref = out;
    tape->record(out, [xn, out_ref](Tape& t) {
      grad_add(t.grad_acc(xn), t.grad(out_ref.node()));
    });
  }
  return out;
}

Tensor bias_add(const Tensor& x, const Tensor& b) {
  RN_CHECK(!x.is_complex() && !b.is_complex(), "bias_add: real tensors only");
  RN_SHAPE_CHECK(b.ndim() == 1 && b.dim(0) == x.dim(-1),
                 "bias_add: bias " + shape_str(b.shape()) + " vs input " +
                     shape_str(x.shape()));
  const int64_t c = b.dim(0);
  const int64_t rows = x.numel() / c;
  Tensor out = x.clone();
  for (int64_t r = 0; r < rows; ++r)
    kern::active().add(out.re() + r * c, b.re(), out.re() + r * c, c);

  if (Tape* tape = op_tape({&x, &b})) {
    const int64_t xn = x.node(), bn = b.node();
    Tensor out_ref = out;
    tape->record(out, [xn, bn, c, rows, out_ref](Tape& t) {
      const Tensor& g = t.grad(out_ref.node());
      if (xn >= 0) grad_add(t.grad_acc(xn), g);
      if (bn >= 0) {
        Tensor& gb = t.grad_acc(bn);
        for (int64_t r = 0; r < rows; ++r)
          kern::active().add(gb.re(), g.re() + r * c, gb.re(), c);
      }
    });
  }
  return out;
}

Tensor sum_all(const Tensor& x) {
  RN_CHECK(!x.is_complex(), "sum_all: real tensors only");
  Tensor out = Tensor::scalar(kern::active().sum(x.re(), x.numel()));
  if (Tape* tape = op_tape({&x})) {
    const int64_t xn = x.node();
    Tensor out_ref = out;
    tape->record(out, [xn, out_ref](Tape& t) {
      const double g = t.grad(out_ref.node()).scalar_value();
      Tensor& gx = t.grad_acc(xn);
      for (double& v : gx.raw()) v += g;
    });
  }
  return out;
}

Tensor mean_all(const Tensor& x) {
  const double inv = 1.0 / static_cast<double>(x.numel());
  return scale(sum_all(x), inv);
}

Tensor promote_complex(const Tensor& x) {
  RN_CHECK(!x.is_complex(), "promote_complex: input already complex");
  Tensor out = x.to_complex();
  if (Tape* tape = op_tape({&x})) {
    const int64_t xn = x.node();
    Tensor out_ref = out;
    tape->record(out, [xn, out_ref](Tape& t) {
      // Only the real plane of the gradient flows back.
      const Tensor& g = t.grad(out_ref.node());
      Tensor& gx = t.grad_acc(xn);
      add_into(gx, g.re(), gx.numel());
    });
  }
  return out;
}

namespace {

// Raw real gemm helper on tensor planes.
void plane_gemm(const double* a, const double* b, double* c, int64_t m,
                int64_t n, int64_t k, double alpha, double beta) {
  kern::active().gemm(m, n, k, alpha, a, k, b, n, beta, c, n);
}

}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
  RN_SHAPE_CHECK(a.ndim() == 2 && b.ndim() == 2,
                 "matmul: need 2-D operands, got " + shape_str(a.shape()) +
                     " and " + shape_str(b.shape()));
  RN_SHAPE_CHECK(a.dim(1) == b.dim(0),
                 "matmul: inner dimensions disagree: " + shape_str(a.shape()) +
                     " x " + shape_str(b.shape()));
  if (a.is_complex() != b.is_complex()) {
    // One real operand is promoted to complex.
    if (!a.is_complex()) return matmul(promote_complex(a), b);
    return matmul(a, promote_complex(b));
  }

  const int64_t m = a.dim(0), k = a.dim(1), n = b.dim(1);
  Tensor out = Tensor::zeros({m, n}, a.dtype());

  if (!a.is_complex()) {
    plane_gemm(a.re(), b.re(), out.re(), m, n, k, 1.0, 0.0);
  } else {
    plane_gemm(a.re(), b.re(), out.re(), m, n, k, 1.0, 0.0);
    plane_gemm(a.im(), b.im(), out.re(), m, n, k, -1.0, 1.0);
    plane_gemm(a.re(), b.im(), out.im(), m, n, k, 1.0, 0.0);
    plane_gemm(a.im(), b.re(), out.im(), m, n, k, 1.0, 1.0);
  }

  if (Tape* tape = op_tape({&a, &b})) {
    const int64_t an = a.node(), bn = b.node();
    Tensor av = a, bv = b, out_ref = out;
    tape->record(out, [an, bn, av, bv, out_ref, m, n, k](Tape& t) {
      const Tensor& g = t.grad(out_ref.node());
      const bool cx = av.is_complex();
      if (an >= 0) {
        // dA = G * B^T (real) or G * conj(B)^T (complex).
        Tensor bt = Tensor::zeros({n, k}, bv.dtype());
        kern::transpose(bv.re(), bt.re(), k, n);
        Tensor ga = Tensor::zeros({m, k}, av.dtype());
        if (!cx) {
          plane_gemm(g.re(), bt.re(), ga.re(), m, k, n, 1.0, 0.0);
        } else {
          // conj(B)^T: transpose then negate the imaginary plane.
          kern::transpose(bv.im(), bt.im(), k, n);
          for (int64_t i = 0; i < bt.numel(); ++i) bt.im()[i] = -bt.im()[i];
          plane_gemm(g.re(), bt.re(), ga.re(), m, k, n, 1.0, 0.0);
          plane_gemm(g.im(), bt.im(), ga.re(), m, k, n, -1.0, 1.0);
          plane_gemm(g.re(), bt.im(), ga.im(), m, k, n, 1.0, 0.0);
          plane_gemm(g.im(), bt.re(), ga.im(), m, k, n, 1.0, 1.0);
        }
        grad_add(t.grad_acc(an), ga);
      }
      if (bn >= 0) {
        // dB = A^T * G (real) or conj(A)^T * G (complex).
        Tensor at = Tensor::zeros({k, m}, av.dtype());
        kern::transpose(av.re(), at.re(), m, k);
        Tensor gb = Tensor::zeros({k, n}, bv.dtype());
        if (!cx) {
          plane_gemm(at.re(), g.re(), gb.re(), k, n, m, 1.0, 0.0);
        } else {
          kern::transpose(av.im(), at.im(), m, k);
          for (int64_t i = 0; i < at.numel(); ++i) at.im()[i] = -at.im()[i];
          plane_gemm(at.re(), g.re(), gb.re(), k, n, m, 1.0, 0.0);
          plane_gemm(at.im(), g.im(), gb.re(), k, n, m, -1.0, 1.0);
          plane_gemm(at.re(), g.im(), gb.im(), k, n, m, 1.0, 0.0);
          plane_gemm(at.im(), g.re(), gb.im(), k, n, m, 1.0, 1.0);
        }
        grad_add(t.grad_acc(bn), gb);
      }
    });
  }
  return out;
}

Tensor bmm(const Tensor& a, const Tensor& b) {
  RN_SHAPE_CHECK(a.ndim() == 3 && b.ndim() == 3 && a.dim(0) == b.dim(0) &&
                     a.dim(2) == b.dim(1),
                 "bmm: incompatible shapes " + shape_str(a.shape()) + " x " +
                     shape_str(b.shape()));
  RN_CHECK(!a.is_complex() && !b.is_complex(), "bmm: real tensors only");
  const int64_t bs = a.dim(0), m = a.dim(1), k = a.dim(2), n = b.dim(2);
  Tensor out = Tensor::zeros({bs, m, n}, Dtype::Real64);
  for (int64_t i = 0; i < bs; ++i)
    plane_gemm(a.re() + i * m * k, b.re() + i * k * n, out.re() + i * m * n, m,
               n, k, 1.0, 0.0);

  if (Tape* tape = op_tape({&a, &b})) {
    const int64_t an = a.node(), bn = b.node();
    Tensor av = a, bv = b, out_ref = out;
    tape->record(out, [an, bn, av, bv, out_ref, bs, m, n, k](Tape& t) {
      const Tensor& g = t.grad(out_ref.node());
      if (an >= 0) {
        Tensor& ga = t.grad_acc(an);
        std::vector<double> bt(static_cast<size_t>(k * n));
        for (int64_t i = 0; i < bs; ++i) {
          kern::transpose(bv.re() + i * k * n, bt.data(), k, n);
          kern::active().gemm(m, k, n, 1.0, g.re() + i * m * n, n, bt.data(), k,
                              1.0, ga.re() + i * m * k, k);
        }
      }
      if (bn >= 0) {
        Tensor& gb = t.grad_acc(bn);
        std::vector<double> at(static_cast<size_t>(m * k));
        for (int64_t i = 0; i < bs; ++i) {
          kern::transpose(av.re() + i * m * k, at.data(), m, k);
          kern::active().gemm(k, n, m, 1.0, at.data(), m, g.re() + i * m * n, n,
                              1.0, gb.re() + i * k * n, n);
        }
      }
    });
  }
  return out;
}

}  // namespace radnet::ops

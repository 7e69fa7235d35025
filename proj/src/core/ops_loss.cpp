// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "op_common.hpp"
#include "radnet/core/ops.hpp"

namespace radnet::ops {

namespace {

constexpr double kProbEps = 1e-12;

double clamp_prob(double p) {
  return std::min(std::max(p, kProbEps), 1.0 - kProbEps);
}

void check_same(const Tensor& a, const Tensor& b, const char* who) {
  RN_SHAPE_CHECK(a.shape() == b.shape(),
                 std::string(who) + ": shape mismatch " + shape_str(a.shape()) +
                     " vs " + shape_str(b.shape()));
  RN_CHECK(!a.is_complex() && !b.is_complex(),
           std::string(who) + ": real tensors only");
}

}  // namespace

Tensor focal_loss_sum(const Tensor& p, const Tensor& y, double balance,
                      double focus) {
  check_same(p, y, "focal_loss_sum");
  const int64_t n = p.numel();
  double loss = 0.0;
  for (int64_t i = 0; i < n; ++i) {
    const double pc = clamp_prob(p.re()[i]);
    if (y.re()[i] > 0.5)
      loss += -balance * std::pow(1.0 - pc, focus) * std::log(pc);
    else
      loss += -(1.0 - balance) * std::pow(pc, focus) * std::log(1.0 - pc);
  }
  Tensor out = Tensor::scalar(loss);

  if (Tape* tape = op_tape({&p, &y})) {
    const int64_t pn = p.node();
    Tensor pv = p, yv = y, out_ref = out;
    tape->record(out, [pn, pv, yv, out_ref, balance, focus, n](Tape& t) {
      if (pn < 0) return;
      const double g = t.grad(out_ref.node()).scalar_value();
      Tensor& gp = t.grad_acc(pn);
      for (int64_t i = 0; i < n; ++i) {
        const double raw = pv.re()[i];
        if (raw <= kProbEps || raw >= 1.0 - kProbEps) continue;  // clipped flat
        const double pc = raw;
        double d;
        if (yv.re()[i] > 0.5) {
          const double focus_term =
              focus == 0.0
                  ? 0.0
                  : focus * std::pow(1.0 - pc, focus - 1.0) * std::log(pc);
          d = balance * (focus_term - std::pow(1.0 - pc, focus) / pc);
        } else {
          const double focus_term =
              focus == 0.0
                  ? 0.0
                  : focus * std::pow(pc, focus - 1.0) * std::log(1.0 - pc);
          d = (1.0 - balance) *
              (-focus_term + std::pow(pc, focus) / (1.0 - pc));
        }
        gp.re()[i] += g * d;
      }
    });
  }
  return out;
}

Tensor smooth_l1_masked(const Tensor& pred, const Tensor& target,
                        const Tensor& mask) {
  check_same(pred, target, "smooth_l1_masked");
  RN_SHAPE_CHECK(pred.ndim() >= 2, "smooth_l1_masked: need (..., K) input");
  const int64_t k = pred.dim(-1);
  const int64_t cells = pred.numel() / k;
  RN_SHAPE_CHECK(mask.numel() == cells,
                 "smooth_l1_masked: mask " + shape_str(mask.shape()) +
                     " vs pred " + shape_str(pred.shape()));

  int64_t n_pos = 0;
  for (int64_t cidx = 0; cidx < cells; ++cidx)
    if (mask.re()[cidx] > 0.0) ++n_pos;

  double loss = 0.0;
  if (n_pos > 0) {
    for (int64_t cidx = 0; cidx < cells; ++cidx) {
      if (mask.re()[cidx] <= 0.0) continue;
      for (int64_t j = 0; j < k; ++j) {
        const double d = pred.re()[cidx * k + j] - target.re()[cidx * k + j];
        const double a = std::fabs(d);
        loss += a < 1.0 ? 0.5 * d * d : a - 0.5;
      }
    }
    loss /= static_cast<double>(n_pos);
  }
  Tensor out = Tensor::scalar(loss);

  if (Tape* tape = op_tape({&pred, &target, &mask})) {
    const int64_t pn = pred.node();
    Tensor pv = pred, tv = target, mv = mask, out_ref = out;
    tape->record(out, [pn, pv, tv, mv, out_ref, cells, k, n_pos](Tape& t) {
      if (pn < 0 || n_pos == 0) return;
      const double g =
          t.grad(out_ref.node()).scalar_value() / static_cast<double>(n_pos);
      Tensor& gp = t.grad_acc(pn);
      for (int64_t cidx = 0; cidx < cells; ++cidx) {
        if (mv.re()[cidx] <= 0.0) continue;
        for (int64_t j = 0; j < k; ++j) {
          const double d = pv.re()[cidx * k + j] - tv.re()[cidx * k + j];
          const double slope = std::fabs(d) < 1.0 ? d : (d > 0.0 ? 1.0 : -1.0);
          gp.re()[cidx * k + j] += g * slope;
        }
      }
    });
  }
  return out;
}

Tensor softmax_ce_masked_sum(const Tensor& logits, const Tensor& onehot) {
  check_same(logits, onehot, "softmax_ce_masked_sum");
  const int64_t c = logits.dim(-1);
  const int64_t rows = logits.numel() / c;

  double loss = 0.0;
  for (int64_t r = 0; r < rows; ++r) {
    const double* yr = onehot.re() + r * c;
    double ysum = 0.0;
    for (int64_t i = 0; i < c; ++i) ysum += yr[i];
    if (ysum <= 0.0) continue;  // unoccupied pixel
    const double* lr = logits.re() + r * c;
    double mx = lr[0];
    for (int64_t i = 1; i < c; ++i) mx = std::max(mx, lr[i]);
    double z = 0.0;
    for (int64_t i = 0; i < c; ++i) z += std::exp(lr[i] - mx);
    const double lse = mx + std::log(z);
    for (int64_t i = 0; i < c; ++i) {
      if (yr[i] == 0.0) continue;
      const double logp =
          std::max(lr[i] - lse, std::log(kProbEps));  // p clipped at 1e-12
      loss -= yr[i] * logp;
    }
  }
  Tensor out = Tensor::scalar(loss);

  if (Tape* tape = op_tape({&logits, &onehot})) {
    const int64_t ln = logits.node();
    Tensor lv = logits, yv = onehot, out_ref = out;
    tape->record(out, [ln, lv, yv, out_ref, rows, c](Tape& t) {
      if (ln < 0) return;
      const double g = t.grad(out_ref.node()).scalar_value();
      Tensor& gl = t.grad_acc(ln);
      for (int64_t r = 0; r < rows; ++r) {
        const double* yr = yv.re() + r * c;
        double ysum = 0.0;
        for (int64_t i = 0; i < c; ++i) ysum += yr[i];
        if (ysum <= 0.0) continue;
        const double* lr = lv.re() + r * c;
        double mx = lr[0];
        for (int64_t i = 1; i < c; ++i) mx = std::max(mx, lr[i]);
        double z = 0.0;
        for (int64_t i = 0; i < c; ++i) z += std::exp(lr[i] - mx);
        for (int64_t i = 0; i < c; ++i) {
          const double p = std::exp(lr[i] - mx) / z;
          gl.re()[r * c + i] += g * (ysum * p - yr[i]);
        }
      }
    });
  }
  return out;
}

Tensor bce_sum(const Tensor& p, const Tensor& y) {
  check_same(p, y, "bce_sum");
  const int64_t n = p.numel();
  double loss = 0.0;
  for (int64_t i = 0; i < n; ++i) {
    const double pc = clamp_prob(p.re()[i]);
    loss -= y.re()[i] * std::log(pc) + (1.0 - y.re()[i]) * std::log(1.0 - pc);
  }
  Tensor out = Tensor::scalar(loss);

  if (Tape* tape = op_tape({&p, &y})) {
    const int64_t pn = p.node();
    Tensor pv = p, yv = y, out_ref = out;
    tape->record(out, [pn, pv, yv, out_ref, n](Tape& t) {
      if (pn < 0) return;
      const double g = t.grad(out_ref.node()).scalar_value();
      Tensor& gp = t.grad_acc(pn);
      for (int64_t i = 0; i < n; ++i) {
        const double raw = pv.re()[i];
        if (raw <= kProbEps || raw >= 1.0 - kProbEps) continue;
        gp.re()[i] += g * (-yv.re()[i] / raw + (1.0 - yv.re()[i]) / (1.0 - raw));
      }
    });
  }
  return out;
}

}  // namespace radnet::ops

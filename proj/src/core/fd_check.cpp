// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0

#include "radnet/core/fd_check.hpp"

#include <cmath>

#include "radnet/core/errors.hpp"
#include "radnet/core/tape.hpp"

namespace radnet {

namespace {

double eval_scalar(const std::function<Tensor(const Tensor&)>& f,
                   const Tensor& x) {
  const Tensor out = f(x);
  RN_CHECK(out.numel() == 1 && !out.is_complex(),
           "finite_difference_check: f must return a real scalar");
  const double v = out.scalar_value();
  if (!std::isfinite(v))
    throw NumericError("finite_difference_check: f returned non-finite value");
  return v;
}

}  // namespace

double finite_difference_check(
    const std::function<Tensor(const Tensor&)>& f, const Tensor& x, double h) {
  // Reverse-mode gradient.
  Tape tape;
  Tensor xt = x.clone();
  tape.watch(xt);
  Tensor loss = f(xt);
  RN_CHECK(loss.numel() == 1 && !loss.is_complex(),
           "finite_difference_check: f must return a real scalar");
  if (!std::isfinite(loss.scalar_value()))
    throw NumericError("finite_difference_check: f returned non-finite value");
  const Tensor params[] = {xt};
  const Tensor ad = tape.gradients(loss, params)[0];

  // Central differences, one coordinate (and plane) at a time.
  const int64_t n = x.numel();
  const int64_t planes = x.is_complex() ? 2 : 1;
  double worst = 0.0;
  for (int64_t p = 0; p < planes; ++p) {
    for (int64_t i = 0; i < n; ++i) {
      Tensor xp = x.clone();
      Tensor xm = x.clone();
      xp.raw()[p * n + i] += h;
      xm.raw()[p * n + i] -= h;
      const double fd = (eval_scalar(f, xp) - eval_scalar(f, xm)) / (2.0 * h);
      const double got = ad.raw()[p * n + i];
      const double err = std::fabs(got - fd) / std::max(std::fabs(fd), 1e-8);
      worst = std::max(worst, err);
    }
  }
  return worst;
}

}  // namespace radnet

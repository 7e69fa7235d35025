// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0

#include "radnet/dsp/window.hpp"

#include <cmath>
#include <numbers>

#include "radnet/core/errors.hpp"

namespace radnet::dsp {

std::vector<double> hamming(int64_t n) {
  RN_CHECK(n >= 2, "hamming: window length must be >= 2");
  std::vector<double> w(static_cast<size_t>(n));
  const double denom = static_cast<double>(n - 1);
  for (int64_t i = 0; i < n; ++i)
    w[static_cast<size_t>(i)] =
        0.54 - 0.46 * std::cos(2.0 * std::numbers::pi *
                               static_cast<double>(i) / denom);
  return w;
}

}  // namespace radnet::dsp

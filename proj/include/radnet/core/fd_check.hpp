// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

#include "radnet/core/tensor.hpp"

namespace radnet {

// Verification oracle: compares the reverse-mode gradient of f at x against
// central finite differences with step h, perturbing the real and imaginary
// parts of each coordinate separately. Returns
//   max_i |autodiff_i - centraldiff_i| / max(|centraldiff_i|, 1e-8).
// f must be deterministic and is evaluated both on and off tape; a
// non-finite value of f raises NumericError.
double finite_difference_check(
    const std::function<Tensor(const Tensor&)>& f, const Tensor& x, double h);

}  // namespace radnet

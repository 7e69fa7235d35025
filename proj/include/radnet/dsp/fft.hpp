// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "radnet/core/tensor.hpp"

namespace radnet::dsp {

// Unnormalized forward DFT X[k] = sum_m x[m] exp(-j 2 pi k m / N) along one
// axis of a complex tensor. Power-of-two lengths take the radix-2 fast path;
// anything else falls back to the O(N^2) reference and notes it once on
// stderr.
Tensor fft_axis(const Tensor& x, int axis);

// O(N^2) reference transform; the oracle the fast path is tested against.
Tensor dft_reference_axis(const Tensor& x, int axis);

// Zero frequency moved to the center: out[k] = in[(k + N - N/2) mod N],
// which for even N is the half-swap (k -> (k + N/2) mod N).
Tensor fftshift_axis(const Tensor& x, int axis);

// Multiply a real window into one axis (complex or real tensor).
Tensor apply_window_axis(const Tensor& x, int axis,
                         const std::vector<double>& w);

// Sum of |x|^2 over a whole tensor (real or complex).
double total_power(const Tensor& x);

}  // namespace radnet::dsp

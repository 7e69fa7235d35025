// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

namespace radnet::dsp {

// Hamming coefficients w[n] = 0.54 - 0.46*cos(2*pi*n/(N-1)), n = 0..N-1.
// Requires N >= 2.
std::vector<double> hamming(int64_t n);

}  // namespace radnet::dsp

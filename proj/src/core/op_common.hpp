// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <initializer_list>

#include "radnet/core/errors.hpp"
#include "radnet/core/tape.hpp"
#include "radnet/core/tensor.hpp"
#include "radnet/kernels/kernels.hpp"

namespace radnet::ops {

// The single tape shared by the tape-attached operands, or nullptr if all
// operands are constants.
inline Tape* op_tape(std::initializer_list<const Tensor*> ts) {
  Tape* tape = nullptr;
  for (const Tensor* t : ts) {
    if (t->defined() && t->on_tape()) {
      RN_CHECK(tape == nullptr || tape == t->tape(),
               "operands recorded on different tapes");
      tape = t->tape();
    }
  }
  return tape;
}

inline void add_into(Tensor& acc, const double* g, int64_t n) {
  kern::active().add(acc.raw().data(), g, acc.raw().data(), n);
}

}  // namespace radnet::ops

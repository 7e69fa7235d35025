// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "radnet/core/tensor.hpp"

namespace radnet {

// Reverse-mode computation tape.
//
// Ops record themselves when an operand is attached to a tape; the recorded
// backward rule reads the output gradient and accumulates into the operands'
// gradients. Replaying backward in reverse node order yields gradients for
// every watched leaf. A tape is owned by exactly one training step; it is
// not safe to share between threads.
class Tape {
 public:
  Tape() = default;
  ~Tape();
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  // Attach a leaf (typically a parameter). Gradients are produced only for
  // watched tensors and intermediates derived from them.
  int64_t watch(Tensor& t);

  // Record an op output. `backward` may be empty for non-differentiable
  // bookkeeping nodes.
  int64_t record(Tensor& out, std::function<void(Tape&)> backward);

  // Gradient accumulator for a node, allocated zero on first touch.
  Tensor& grad_acc(int64_t node);
  bool has_grad(int64_t node) const;
  const Tensor& grad(int64_t node) const;

  // d(loss)/d(param) for every param, in order. loss must be a real scalar
  // recorded on this tape; params must be attached to it. The tape is reset
  // afterwards (one backward pass per recording).
  std::vector<Tensor> gradients(const Tensor& loss,
                                std::span<const Tensor> params);

  // Drop all nodes and detach every tensor that was recorded.
  void reset();

  int64_t size() const { return static_cast<int64_t>(nodes_.size()); }

 private:
  struct Node {
    std::function<void(Tape&)> backward;
    Shape shape;
    Dtype dtype;
    std::weak_ptr<Tensor::Impl> out;
  };

  std::vector<Node> nodes_;
  std::vector<Tensor> grads_;
};

// out += g, elementwise over the raw planes. Utility for backward rules.
void grad_add(Tensor& acc, const Tensor& g);

}  // namespace radnet

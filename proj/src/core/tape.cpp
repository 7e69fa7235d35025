// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0

#include "radnet/core/tape.hpp"

#include "radnet/core/errors.hpp"
#include "radnet/kernels/kernels.hpp"

namespace radnet {

Tape::~Tape() { reset(); }

int64_t Tape::watch(Tensor& t) {
  RN_CHECK(t.defined(), "watch: undefined tensor");
  RN_CHECK(!t.on_tape(), "watch: tensor already attached to a tape");
  const int64_t id = static_cast<int64_t>(nodes_.size());
  nodes_.push_back(Node{{}, t.shape(), t.dtype(), t.impl_});
  t.impl_->tape = this;
  t.impl_->node = id;
  return id;
}

int64_t Tape::record(Tensor& out, std::function<void(Tape&)> backward) {
  RN_CHECK(out.defined(), "record: undefined tensor");
  const int64_t id = static_cast<int64_t>(nodes_.size());
  nodes_.push_back(Node{std::move(backward), out.shape(), out.dtype(), out.impl_});
  out.impl_->tape = this;
  out.impl_->node = id;
  return id;
}

Tensor& Tape::grad_acc(int64_t node) {
  if (grads_.size() < nodes_.size()) grads_.resize(nodes_.size());
  Tensor& g = grads_[static_cast<size_t>(node)];
  if (!g.defined())
    g = Tensor::zeros(nodes_[static_cast<size_t>(node)].shape,
                      nodes_[static_cast<size_t>(node)].dtype);
  return g;
}

bool Tape::has_grad(int64_t node) const {
  return node >= 0 && static_cast<size_t>(node) < grads_.size() &&
         grads_[static_cast<size_t>(node)].defined();
}

const Tensor& Tape::grad(int64_t node) const {
  RN_CHECK(has_grad(node), "grad: node has no gradient");
  return grads_[static_cast<size_t>(node)];
}

std::vector<Tensor> Tape::gradients(const Tensor& loss,
                                    std::span<const Tensor> params) {
  RN_CHECK(loss.defined() && loss.numel() == 1 && !loss.is_complex(),
           "gradients: loss must be a real scalar");
  RN_CHECK(loss.tape() == this && loss.on_tape(),
           "gradients: loss was not recorded on this tape");
  for (const Tensor& p : params)
    RN_CHECK(p.tape() == this && p.on_tape(),
             "gradients: parameter not attached to this tape");

  grads_.assign(nodes_.size(), Tensor());
  grads_[static_cast<size_t>(loss.node())] = Tensor::scalar(1.0);

  for (int64_t i = loss.node(); i >= 0; --i) {
    Node& n = nodes_[static_cast<size_t>(i)];
    if (n.backward && has_grad(i)) n.backward(*this);
  }

  std::vector<Tensor> out;
  out.reserve(params.size());
  for (const Tensor& p : params) {
    if (has_grad(p.node()))
      out.push_back(grads_[static_cast<size_t>(p.node())]);
    else
      out.push_back(Tensor::zeros(p.shape(), p.dtype()));
  }
  reset();
  return out;
}

void Tape::reset() {
  for (Node& n : nodes_) {
    if (auto impl = n.out.lock()) {
      impl->tape = nullptr;
      impl->node = -1;
    }
  }
  nodes_.clear();
  grads_.clear();
}

void grad_add(Tensor& acc, const Tensor& g) {
  RN_CHECK(acc.raw().size() == g.raw().size(),
           "grad_add: buffer size mismatch");
  kern::active().add(acc.raw().data(), g.raw().data(), acc.raw().data(),
                     static_cast<int64_t>(acc.raw().size()));
}

}  // namespace radnet

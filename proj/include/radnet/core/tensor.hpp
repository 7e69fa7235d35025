// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace radnet {

enum class Dtype { Real64, Complex128 };

using Shape = std::vector<int64_t>;

int64_t shape_numel(const Shape& s);
std::string shape_str(const Shape& s);

class Tape;

// Dense row-major tensor of real64 or complex128 values.
//
// Complex data is stored planar: the full real plane followed by the full
// imaginary plane. Element access still presents (re, im) pairs. Tensors are
// immutable once built and handed to an op; reshape shares the buffer.
// Gradients exist only for tensors attached to a Tape (node() >= 0), and for
// a complex tensor the gradient of a real loss L w.r.t. w = a + jb is stored
// as dL/da + j dL/db.
class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(Shape shape, Dtype dtype = Dtype::Real64);
  static Tensor full(Shape shape, double value);
  static Tensor scalar(double v);
  static Tensor from_real(Shape shape, std::vector<double> values);
  static Tensor from_complex(Shape shape, const std::vector<double>& re,
                             const std::vector<double>& im);

  bool defined() const { return impl_ != nullptr; }
  const Shape& shape() const;
  int ndim() const;
  int64_t dim(int i) const;
  int64_t numel() const;
  Dtype dtype() const;
  bool is_complex() const { return dtype() == Dtype::Complex128; }

  double* re();
  const double* re() const;
  double* im();  // nullptr for real tensors
  const double* im() const;
  std::span<double> raw();  // both planes
  std::span<const double> raw() const;

  double at(int64_t flat) const;                // real tensors
  std::complex<double> cat(int64_t flat) const; // any tensor, (re, im) view
  double scalar_value() const;                  // real scalar tensors

  // Deep copy; the copy is never tape-attached.
  Tensor clone() const;
  // Real -> complex promotion with zero imaginary plane (values copied).
  Tensor to_complex() const;

  bool on_tape() const;
  int64_t node() const;
  Tape* tape() const;

  // Same buffer, new shape (same numel). The result shares tape attachment
  // never; use ops::reshape for a differentiable reshape.
  Tensor reshaped_view(Shape shape) const;

 private:
  friend class Tape;

  struct Impl {
    Shape shape;
    Dtype dtype = Dtype::Real64;
    std::shared_ptr<std::vector<double>> buf;  // planar storage
    Tape* tape = nullptr;
    int64_t node = -1;
  };

  explicit Tensor(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  static Tensor make(Shape shape, Dtype dtype);

  std::shared_ptr<Impl> impl_;
};

}  // namespace radnet

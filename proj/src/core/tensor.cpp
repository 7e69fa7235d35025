// Copyright (c) 2026 the radnet authors
// SPDX-License-Identifier: Apache-2.0

#include "radnet/core/tensor.hpp"

#include <sstream>

#include "radnet/core/errors.hpp"

namespace radnet {

int64_t shape_numel(const Shape& s) {
  int64_t n = 1;
  for (int64_t e : s) {
    RN_SHAPE_CHECK(e >= 0, "negative extent in shape " + shape_str(s));
    n *= e;
  }
  return n;
}

std::string shape_str(const Shape& s) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << ")";
  return os.str();
}

Tensor Tensor::make(Shape shape, Dtype dtype) {
  auto impl = std::make_shared<Impl>();
  const int64_t n = shape_numel(shape);
  impl->shape = std::move(shape);
  impl->dtype = dtype;
  const int64_t planes = (dtype == Dtype::Complex128) ? 2 : 1;
  impl->buf = std::make_shared<std::vector<double>>(
      static_cast<size_t>(n * planes), 0.0);
  return Tensor(std::move(impl));
}

Tensor Tensor::zeros(Shape shape, Dtype dtype) {
  return make(std::move(shape), dtype);
}

Tensor Tensor::full(Shape shape, double value) {
  Tensor t = make(std::move(shape), Dtype::Real64);
  for (double& v : *t.impl_->buf) v = value;
  return t;
}

Tensor Tensor::scalar(double v) { return full({}, v); }

Tensor Tensor::from_real(Shape shape, std::vector<double> values) {
  const int64_t n = shape_numel(shape);
  RN_SHAPE_CHECK(static_cast<int64_t>(values.size()) == n,
                 "from_real: " + std::to_string(values.size()) +
                     " values for shape " + shape_str(shape));
  auto impl = std::make_shared<Impl>();
  impl->shape = std::move(shape);
  impl->dtype = Dtype::Real64;
  impl->buf = std::make_shared<std::vector<double>>(std::move(values));
  return Tensor(std::move(impl));
}

Tensor Tensor::from_complex(Shape shape, const std::vector<double>& re,
                            const std::vector<double>& im) {
  const int64_t n = shape_numel(shape);
  RN_SHAPE_CHECK(static_cast<int64_t>(re.size()) == n &&
                     static_cast<int64_t>(im.size()) == n,
                 "from_complex: plane sizes do not match shape " +
                     shape_str(shape));
  Tensor t = make(std::move(shape), Dtype::Complex128);
  std::copy(re.begin(), re.end(), t.re());
  std::copy(im.begin(), im.end(), t.im());
  return t;
}

const Shape& Tensor::shape() const {
  RN_CHECK(defined(), "use of undefined tensor");
  return impl_->shape;
}

int Tensor::ndim() const { return static_cast<int>(shape().size()); }

int64_t Tensor::dim(int i) const {
  const Shape& s = shape();
  if (i < 0) i += static_cast<int>(s.size());
  RN_SHAPE_CHECK(i >= 0 && i < static_cast<int>(s.size()),
                 "dim index out of range for shape " + shape_str(s));
  return s[static_cast<size_t>(i)];
}

int64_t Tensor::numel() const { return shape_numel(shape()); }

Dtype Tensor::dtype() const {
  RN_CHECK(defined(), "use of undefined tensor");
  return impl_->dtype;
}

double* Tensor::re() { return impl_->buf->data(); }
const double* Tensor::re() const { return impl_->buf->data(); }

double* Tensor::im() {
  return is_complex() ? impl_->buf->data() + numel() : nullptr;
}
const double* Tensor::im() const {
  return is_complex() ? impl_->buf->data() + numel() : nullptr;
}

std::span<double> Tensor::raw() {
  return {impl_->buf->data(), impl_->buf->size()};
}
std::span<const double> Tensor::raw() const {
  return {impl_->buf->data(), impl_->buf->size()};
}

double Tensor::at(int64_t flat) const {
  RN_CHECK(!is_complex(), "at() on complex tensor; use cat()");
  return (*impl_->buf)[static_cast<size_t>(flat)];
}

std::complex<double> Tensor::cat(int64_t flat) const {
  const double r = (*impl_->buf)[static_cast<size_t>(flat)];
  const double i =
      is_complex() ? (*impl_->buf)[static_cast<size_t>(flat + numel())] : 0.0;
  return {r, i};
}

double Tensor::scalar_value() const {
  RN_CHECK(numel() == 1 && !is_complex(), "scalar_value: not a real scalar");
  return (*impl_->buf)[0];
}

Tensor Tensor::clone() const {
  RN_CHECK(defined(), "clone of undefined tensor");
  auto impl = std::make_shared<Impl>();
  impl->shape = impl_->shape;
  impl->dtype = impl_->dtype;
  impl->buf = std::make_shared<std::vector<double>>(*impl_->buf);
  return Tensor(std::move(impl));
}

Tensor Tensor::to_complex() const {
  RN_CHECK(!is_complex(), "to_complex: already complex");
  Tensor t = make(shape(), Dtype::Complex128);
  std::copy(impl_->buf->begin(), impl_->buf->end(), t.re());
  return t;
}

bool Tensor::on_tape() const { return defined() && impl_->node >= 0; }
int64_t Tensor::node() const { return defined() ? impl_->node : -1; }
Tape* Tensor::tape() const { return defined() ? impl_->tape : nullptr; }

Tensor Tensor::reshaped_view(Shape shape) const {
  RN_SHAPE_CHECK(shape_numel(shape) == numel(),
                 "reshape " + shape_str(this->shape()) + " -> " +
                     shape_str(shape) + ": element count differs");
  auto impl = std::make_shared<Impl>();
  impl->shape = std::move(shape);
  impl->dtype = impl_->dtype;
  impl->buf = impl_->buf;
  return Tensor(std::move(impl));
}

}  // namespace radnet

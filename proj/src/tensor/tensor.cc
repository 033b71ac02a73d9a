// src/tensor/tensor.cc
//
// Copyright 2026  The slt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "slt/tensor/tensor.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "slt/base/error.h"

namespace slt {

std::string ShapeString(const Shape &shape) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) os << ',';
    os << shape[i];
  }
  os << ')';
  return os.str();
}

std::size_t ShapeSize(const Shape &shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

Tensor::Tensor(Shape shape, double fill) : shape_(std::move(shape)) {
  for (std::size_t d : shape_)
    if (d == 0) throw DimensionError("tensor extent must be positive: " + ShapeString(shape_));
  data_.assign(ShapeSize(shape_), fill);
}

Tensor::Tensor(Shape shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (data_.size() != ShapeSize(shape_))
    throw DimensionError("data length " + std::to_string(data_.size()) +
                         " does not match shape " + ShapeString(shape_));
}

Tensor Tensor::Vector(std::initializer_list<double> values) {
  return Tensor(Shape{values.size()}, std::vector<double>(values));
}

Tensor Tensor::Matrix(std::size_t rows, std::size_t cols,
                      std::initializer_list<double> values) {
  return Tensor(Shape{rows, cols}, std::vector<double>(values));
}

double Tensor::item() const {
  if (data_.size() != 1)
    throw DimensionError("item() on non-scalar tensor " + ShapeString(shape_));
  return data_[0];
}

void Tensor::Fill(double v) { std::fill(data_.begin(), data_.end(), v); }

void Tensor::AddInPlace(const Tensor &other) {
  if (other.shape_ != shape_)
    throw DimensionError("cannot add " + ShapeString(other.shape_) + " into " +
                         ShapeString(shape_));
  const double *src = other.data();
  double *dst = data();
  for (std::size_t i = 0, n = data_.size(); i < n; ++i) dst[i] += src[i];
}

bool Tensor::AllFinite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

Tensor Tensor::Reshaped(Shape shape) const {
  if (ShapeSize(shape) != data_.size())
    throw DimensionError("cannot reshape " + ShapeString(shape_) + " to " +
                         ShapeString(shape));
  return Tensor(std::move(shape), data_);
}

}  // namespace slt

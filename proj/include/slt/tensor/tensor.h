// include/slt/tensor/tensor.h
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

#ifndef SLT_TENSOR_TENSOR_H_
#define SLT_TENSOR_TENSOR_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace slt {

using Shape = std::vector<std::size_t>;

std::string ShapeString(const Shape &shape);
std::size_t ShapeSize(const Shape &shape);

// Dense row-major tensor of 64-bit reals. A rank-0 tensor holds one scalar.
// A default-constructed tensor is "empty" (no storage) and is used as the
// not-yet-allocated state for gradients.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(Shape shape, double fill = 0.0);
  Tensor(Shape shape, std::vector<double> data);

  static Tensor Scalar(double v) { return Tensor(Shape{}, std::vector<double>{v}); }
  static Tensor Vector(std::initializer_list<double> values);
  static Tensor Matrix(std::size_t rows, std::size_t cols,
                       std::initializer_list<double> values);

  bool empty() const { return data_.empty(); }
  const Shape &shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t dim(std::size_t axis) const { return shape_.at(axis); }
  std::size_t size() const { return data_.size(); }

  double *data() { return data_.data(); }
  const double *data() const { return data_.data(); }
  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  double &operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }
  double &at(std::size_t i, std::size_t j) { return data_[i * shape_[1] + j]; }
  double at(std::size_t i, std::size_t j) const { return data_[i * shape_[1] + j]; }

  double item() const;
  void Fill(double v);
  /// this += other (same shape).
  void AddInPlace(const Tensor &other);
  bool AllFinite() const;

  /// Same data under a new shape of identical size.
  Tensor Reshaped(Shape shape) const;

  bool operator==(const Tensor &other) const {
    return shape_ == other.shape_ && data_ == other.data_;
  }

 private:
  Shape shape_;
  std::vector<double> data_;
};

}  // namespace slt

#endif  // SLT_TENSOR_TENSOR_H_

// include/slt/tensor/ops.h
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

#ifndef SLT_TENSOR_OPS_H_
#define SLT_TENSOR_OPS_H_

#include <cstddef>
#include <vector>

#include "slt/tensor/graph.h"

namespace slt {

// Differentiable primitives. Every function records one node on the graph
// that owns its operands and throws DimensionError on shape mismatch.
// "Vector" means rank 1, "matrix" rank 2; row-vector convention (y = xW).

/// (n)x(n,k) -> (k), (t,n)x(n,k) -> (t,k), (t,n)x(n) -> (t).
Var MatMul(Var a, Var b);
/// y = xW + b, x a vector or a matrix of row vectors.
Var Affine(Var x, Var w, Var b);
/// Adds vector b to every row (last-axis broadcast).
Var AddBias(Var x, Var b);
Var Add(Var a, Var b);
Var Mul(Var a, Var b);
/// Multiplies each row of x by vector v (last-axis broadcast).
Var MulBroadcast(Var x, Var v);
Var Scale(Var x, double c);
Var Tanh(Var x);
Var Sigmoid(Var x);
/// Softmax along `axis` (any rank).
Var Softmax(Var x, std::size_t axis);
/// Log-softmax along the last axis.
Var LogSoftmax(Var x);
/// -log softmax(logits)[target] for a vector of logits.
Var CrossEntropy(Var logits, std::size_t target);
/// Sum of all entries, as a rank-0 tensor.
Var Sum(Var x);

/// Concatenation along the last axis; all operands share the leading extents.
Var Concat(const std::vector<Var> &parts);
/// Row i of a matrix, as a vector.
Var Row(Var x, std::size_t i);
/// Stacks equally sized vectors into a matrix.
Var StackRows(const std::vector<Var> &rows);
/// Entries [begin, begin+len) of a vector.
Var Slice(Var x, std::size_t begin, std::size_t len);
/// Rows of `table` selected by ids, as a (ids.size(), cols) matrix.
Var Gather(Var table, const std::vector<int> &ids);
Var Reshape(Var x, Shape shape);

/// 2-D convolution over a (T, F, depth) input with filters of shape
/// (count, kh, kw, depth) and a bias of shape (count). Odd kernels are
/// centred and zero-padded, so each output axis has extent ceil(L / stride).
Var Conv2d(Var input, Var filters, Var bias, std::size_t stride_t, std::size_t stride_f);

/// Output extent of Conv2d along one axis.
inline std::size_t ConvOutputLength(std::size_t length, std::size_t stride) {
  return (length + stride - 1) / stride;
}

}  // namespace slt

#endif  // SLT_TENSOR_OPS_H_

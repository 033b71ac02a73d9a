// src/tensor/graph.cc
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

#include "slt/tensor/graph.h"

#include "slt/base/error.h"

namespace slt {

Var Graph::Input(Tensor value) {
  if (!value.AllFinite()) throw NumericError("non-finite graph input");
  nodes_.push_back(Node{std::move(value), nullptr, {}, {}, nullptr});
  return Var{this, nodes_.size() - 1};
}

Var Graph::Constant(const Tensor &external) {
  nodes_.push_back(Node{{}, &external, {}, {}, nullptr});
  return Var{this, nodes_.size() - 1};
}

Var Graph::Param(Parameter &param) {
  nodes_.push_back(Node{{}, &param.value, {}, {}, &param});
  return Var{this, nodes_.size() - 1};
}

Var Graph::Record(Tensor value, BackwardFn backward) {
  if (!value.AllFinite())
    throw NumericError("primitive produced a non-finite value, shape " +
                       ShapeString(value.shape()));
  Node n;
  n.value = std::move(value);
  if (recording_) n.backward = std::move(backward);
  nodes_.push_back(std::move(n));
  return Var{this, nodes_.size() - 1};
}

Tensor &Graph::grad(std::size_t id) {
  Node &n = nodes_[id];
  if (n.grad.empty()) n.grad = Tensor(value(id).shape(), 0.0);
  return n.grad;
}

void Graph::Backward(Var loss) {
  if (!recording_) throw Error("Backward() on a graph built without gradients");
  if (backward_done_) throw Error("Backward() called twice on the same graph");
  if (loss.graph != this) throw Error("loss belongs to a different graph");
  if (value(loss.id).size() != 1)
    throw DimensionError("backward needs a scalar loss, got shape " +
                         ShapeString(value(loss.id).shape()));
  backward_done_ = true;
  grad(loss.id).Fill(1.0);
  for (std::size_t i = loss.id + 1; i-- > 0;) {
    Node &n = nodes_[i];
    if (n.grad.empty()) continue;
    if (n.backward) n.backward(*this, i);
    if (n.param) n.param->grad.AddInPlace(n.grad);
  }
}

}  // namespace slt

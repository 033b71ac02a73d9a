// include/slt/tensor/graph.h
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

#ifndef SLT_TENSOR_GRAPH_H_
#define SLT_TENSOR_GRAPH_H_

#include <cstddef>
#include <functional>
#include <vector>

#include "slt/tensor/parameters.h"
#include "slt/tensor/tensor.h"

namespace slt {

class Graph;

// Handle to a node of a Graph. Cheap to copy; only valid while the graph lives.
struct Var {
  Graph *graph = nullptr;
  std::size_t id = 0;

  const Tensor &value() const;
  const Shape &shape() const { return value().shape(); }
};

// Tape of primitive applications in execution order. Operands always precede
// the nodes that consume them, so a single reverse sweep is a valid backward
// pass. A graph built with record_gradients=false keeps values only; it is
// what inference and finite-difference probes use.
class Graph {
 public:
  using BackwardFn = std::function<void(Graph &, std::size_t self)>;

  explicit Graph(bool record_gradients = true) : recording_(record_gradients) {}
  Graph(const Graph &) = delete;
  Graph &operator=(const Graph &) = delete;

  Var Input(Tensor value);
  /// Leaf that reads `external` in place; it must outlive the graph.
  Var Constant(const Tensor &external);
  /// Leaf bound to a parameter. Backward() adds its gradient into param->grad.
  Var Param(Parameter &param);

  /// Appends a primitive result. Throws NumericError on non-finite values.
  Var Record(Tensor value, BackwardFn backward);

  const Tensor &value(std::size_t id) const {
    const Node &n = nodes_[id];
    return n.external ? *n.external : n.value;
  }
  /// Gradient buffer for `id`, zero-allocated on first use.
  Tensor &grad(std::size_t id);
  bool has_grad(std::size_t id) const { return !nodes_[id].grad.empty(); }

  bool recording() const { return recording_; }
  std::size_t size() const { return nodes_.size(); }

  /// Reverse sweep from a scalar loss. May be called once per graph.
  void Backward(Var loss);

 private:
  struct Node {
    Tensor value;
    const Tensor *external = nullptr;
    Tensor grad;
    BackwardFn backward;
    Parameter *param = nullptr;
  };

  bool recording_;
  bool backward_done_ = false;
  std::vector<Node> nodes_;
};

inline const Tensor &Var::value() const { return graph->value(id); }

}  // namespace slt

#endif  // SLT_TENSOR_GRAPH_H_

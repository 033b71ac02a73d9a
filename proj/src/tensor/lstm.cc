// src/tensor/lstm.cc
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

#include "slt/tensor/lstm.h"

#include "slt/base/error.h"
#include "slt/tensor/ops.h"

namespace slt {

RecurrentCellParams RecurrentCellParams::Find(ParameterSet &params, const std::string &prefix) {
  RecurrentCellParams cell{&params.Get(prefix + "/W_x"), &params.Get(prefix + "/W_h"),
                           &params.Get(prefix + "/b")};
  const Shape &wx = cell.w_input->value.shape();
  const Shape &wh = cell.w_recurrent->value.shape();
  const Shape &b = cell.bias->value.shape();
  if (wx.size() != 2 || wh.size() != 2 || b.size() != 1 || wh[1] != 4 * wh[0] ||
      wx[1] != wh[1] || b[0] != wh[1])
    throw DimensionError("inconsistent recurrent cell shapes under " + prefix + ": W_x " +
                         ShapeString(wx) + ", W_h " + ShapeString(wh) + ", b " +
                         ShapeString(b));
  return cell;
}

RecurrentCellParams AddRecurrentCell(ParameterSet *params, const std::string &prefix,
                                     std::size_t input_size, std::size_t cell_size) {
  RecurrentCellParams cell;
  cell.w_input = &params->Add(prefix + "/W_x", {input_size, 4 * cell_size});
  cell.w_recurrent = &params->Add(prefix + "/W_h", {cell_size, 4 * cell_size});
  cell.bias = &params->Add(prefix + "/b", {4 * cell_size});
  return cell;
}

void InitRecurrentCell(const RecurrentCellParams &cell, std::mt19937_64 *rng) {
  const std::size_t m = cell.cell_size();
  GlorotUniform(&cell.w_input->value, cell.input_size(), 4 * m, rng);
  GlorotUniform(&cell.w_recurrent->value, m, 4 * m, rng);
  cell.bias->value.Fill(0.0);
  for (std::size_t j = m; j < 2 * m; ++j) cell.bias->value[j] = 1.0;
}

LstmCellVars LstmCellVars::Bind(Graph &g, const RecurrentCellParams &cell) {
  return LstmCellVars{g.Param(*cell.w_input), g.Param(*cell.w_recurrent),
                      g.Param(*cell.bias), cell.cell_size()};
}

LstmState ZeroLstmState(Graph &g, std::size_t cell_size) {
  return LstmState{g.Input(Tensor(Shape{cell_size})), g.Input(Tensor(Shape{cell_size}))};
}

LstmState LstmStep(const LstmCellVars &cell, const LstmState &prev, Var x) {
  return LstmStepProjected(cell, prev, Affine(x, cell.w_input, cell.bias));
}

LstmState LstmStepProjected(const LstmCellVars &cell, const LstmState &prev,
                            Var projected_input) {
  const std::size_t m = cell.cell_size;
  if (prev.c.value().size() != m || prev.h.value().size() != m)
    throw DimensionError("LSTM state of size " + std::to_string(prev.h.value().size()) +
                         " does not match cell size " + std::to_string(m));
  Var gates = Add(projected_input, MatMul(prev.h, cell.w_recurrent));
  Var in_gate = Sigmoid(Slice(gates, 0, m));
  Var forget_gate = Sigmoid(Slice(gates, m, m));
  Var out_gate = Sigmoid(Slice(gates, 2 * m, m));
  Var candidate = Tanh(Slice(gates, 3 * m, m));
  Var c = Add(Mul(forget_gate, prev.c), Mul(in_gate, candidate));
  Var h = Mul(out_gate, Tanh(c));
  return LstmState{c, h};
}

}  // namespace slt

// include/slt/tensor/lstm.h
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

#ifndef SLT_TENSOR_LSTM_H_
#define SLT_TENSOR_LSTM_H_

#include <random>
#include <string>

#include "slt/tensor/graph.h"
#include "slt/tensor/parameters.h"

namespace slt {

// Standard 4-gate LSTM cell. Gate blocks are laid out as
// [input | forget | output | candidate], each of width cell_size:
//   i = sigm(.), f = sigm(.), o = sigm(.), g = tanh(.)
//   c = f * c_prev + i * g
//   h = o * tanh(c)
// Parameters: <prefix>/W_x (input, 4m), <prefix>/W_h (m, 4m), <prefix>/b (4m).
struct RecurrentCellParams {
  Parameter *w_input = nullptr;
  Parameter *w_recurrent = nullptr;
  Parameter *bias = nullptr;

  std::size_t input_size() const { return w_input->value.dim(0); }
  std::size_t cell_size() const { return w_recurrent->value.dim(0); }

  /// Looks up an existing cell under `prefix` and validates its shapes.
  static RecurrentCellParams Find(ParameterSet &params, const std::string &prefix);
};

/// Creates the cell's parameters (zero-valued).
RecurrentCellParams AddRecurrentCell(ParameterSet *params, const std::string &prefix,
                                     std::size_t input_size, std::size_t cell_size);

/// Glorot-uniform weights, zero biases except the forget gate, set to 1.
void InitRecurrentCell(const RecurrentCellParams &cell, std::mt19937_64 *rng);

struct LstmState {
  Var c;
  Var h;
};

// The cell's parameters bound to one graph.
struct LstmCellVars {
  Var w_input, w_recurrent, bias;
  std::size_t cell_size = 0;

  static LstmCellVars Bind(Graph &g, const RecurrentCellParams &cell);
};

LstmState ZeroLstmState(Graph &g, std::size_t cell_size);

/// One step on an input vector x.
LstmState LstmStep(const LstmCellVars &cell, const LstmState &prev, Var x);

/// One step where the input contribution x W_x + b was computed beforehand
/// (e.g. for a whole sequence in one matrix product).
LstmState LstmStepProjected(const LstmCellVars &cell, const LstmState &prev,
                            Var projected_input);

}  // namespace slt

#endif  // SLT_TENSOR_LSTM_H_

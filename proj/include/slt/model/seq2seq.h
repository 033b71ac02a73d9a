// include/slt/model/seq2seq.h
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

#ifndef SLT_MODEL_SEQ2SEQ_H_
#define SLT_MODEL_SEQ2SEQ_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slt/model/config.h"
#include "slt/tensor/graph.h"
#include "slt/tensor/lstm.h"
#include "slt/tensor/parameters.h"

namespace slt {

// Variational dropout masks, one vector per application point. Each mask is
// drawn once per mini-batch and reused for every sequence and time step.
// Empty tensors mean "no dropout at this point". Recurrent connections are
// never masked.
struct DropoutMasks {
  Tensor speech_input1;              // output of the first tanh input layer
  Tensor speech_input2;              // output of the second tanh input layer
  std::vector<Tensor> speech_layers; // output of each bidirectional layer
  Tensor text_embedding;
  Tensor text_output;
  Tensor target_embedding;           // E(y_{t-1})
  Tensor decoder_output;             // o'_t before the output layer
  Tensor output_hidden;              // tanh output layer
};

// Encoder inputs; which field is read depends on the encoder kind.
struct SourceSequence {
  Tensor features;          // (T_x, 41) for speech encoders
  std::vector<int> tokens;  // source ids for text encoders
};

// Encoder output bound to a graph, with the per-source quantities attention
// needs at every step: keys h_i W_a (T' x attention_size) and the offsets
// h_i - h_1 used to form the context.
struct EncodedSource {
  Var annotations;
  Var keys;
  Var offsets;
  std::size_t length() const { return annotations.shape()[0]; }
};

struct AttentionVars {
  Var w_query, w_annot, bias, v;
};

struct OutputVars {
  std::optional<Var> w_out, b_out;  // absent when the tanh layer is disabled
  Var w_proj, b_proj;
};

struct DecoderVars {
  Var embedding;
  LstmCellVars update1, update2;
  AttentionVars attention;
  OutputVars output;
};

// (s_t, o_t) and (s'_t, o'_t) of the conditional decoder; o = h.
struct DecoderState {
  LstmState first;
  LstmState second;
  Var context;
  int prev_symbol = 0;
};

struct AttentionResult {
  Var context;  // c_t
  Var weights;  // softmax over the T' annotations
};

struct DecoderStepResult {
  DecoderState state;
  Var scores;   // z, one entry per target symbol
  Var weights;  // attention weights used at this step
};

/// e_i = v . tanh(W_q o + W_a h_i + b), weights = softmax(e), c = sum_i w_i h_i.
/// The context is evaluated as h_1 + sum_i w_i (h_i - h_1), which is the same
/// convex combination but returns h_1 exactly when all annotations coincide.
AttentionResult Attend(const AttentionVars &att, Var query, const EncodedSource &source);

/// z = W_proj tanh(W_out x + b_out) + b_proj, or z = W_proj x + b_proj when the
/// tanh layer is disabled; x = o' (+) c (+) E(y_{t-1}).
Var OutputScores(const OutputVars &out, Var decoder_output, Var context, Var prev_embedding,
                 const Tensor *hidden_mask = nullptr);

/// Speech encoder / shallow text encoder / conditional decoder. Owns its
/// parameters; all forward functions are const and only read them.
class Seq2SeqModel {
 public:
  explicit Seq2SeqModel(ModelConfig config);

  /// Rebuilds a model around existing parameters (e.g. a loaded checkpoint);
  /// the configuration is recovered from parameter names and shapes. The new
  /// model aliases the parameters of `params`.
  static Seq2SeqModel FromParameters(const ParameterSet &params);

  /// Copies share parameter storage; Clone() duplicates it.
  Seq2SeqModel Clone() const;

  /// Glorot-uniform matrices, zero biases, forget-gate biases at 1.
  void Initialize(std::uint64_t seed);

  const ModelConfig &config() const { return config_; }
  ParameterSet &params() { return params_; }
  const ParameterSet &params() const { return params_; }

  EncodedSource EncodeSpeech(Graph &g, const Tensor &features,
                             const DropoutMasks *masks = nullptr) const;
  EncodedSource EncodeText(Graph &g, const std::vector<int> &tokens,
                           const DropoutMasks *masks = nullptr) const;
  EncodedSource Encode(Graph &g, const SourceSequence &source,
                       const DropoutMasks *masks = nullptr) const;

  /// Wraps externally computed annotations (T' x 2m) for the decoder.
  EncodedSource Attach(Graph &g, Var annotations) const;

  DecoderVars BindDecoder(Graph &g) const;
  /// s'_0 = 0, y_0 = BOS.
  DecoderState InitialState(Graph &g) const;
  DecoderStepResult DecoderStep(const DecoderVars &vars, const DecoderState &state,
                                const EncodedSource &source,
                                const DropoutMasks *masks = nullptr) const;

  /// Sum over target positions of the cross-entropy of the teacher-forced
  /// decoder; `targets` normally ends with EOS. The symbol fed back after
  /// position t is targets[t], or (*history)[t] when given (symbol dropout
  /// corrupts the history, never the predicted targets).
  Var TeacherForcedLoss(Graph &g, const SourceSequence &source, const std::vector<int> &targets,
                        const DropoutMasks *masks = nullptr,
                        const std::vector<int> *history = nullptr) const;

 private:
  void CreateParameters();
  Var BiLstm(Graph &g, const std::string &prefix, Var inputs) const;

  ModelConfig config_;
  ParameterSet params_;
};

/// Recovers the architecture from the names and shapes of a parameter set.
/// Throws ConfigError when the set does not describe a complete model.
ModelConfig InferModelConfig(const ParameterSet &params);

/// Argmax with lowest-index tie-break.
std::size_t ArgMax(const Tensor &scores);

}  // namespace slt

#endif  // SLT_MODEL_SEQ2SEQ_H_

// src/model/seq2seq.cc
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

#include "slt/model/seq2seq.h"

#include <random>

#include "slt/base/error.h"
#include "slt/tensor/ops.h"
#include "slt/text/vocabulary.h"

namespace slt {

namespace {

const char kSpeech[] = "speech_encoder";
const char kText[] = "text_encoder";
const char kDecoder[] = "decoder";

std::string Join(const std::string &a, const std::string &b) { return a + "/" + b; }

Var MaybeMask(Graph &g, Var x, const Tensor *mask) {
  if (mask == nullptr || mask->empty()) return x;
  return MulBroadcast(x, g.Constant(*mask));
}

const Tensor *Pick(const DropoutMasks *masks, const Tensor DropoutMasks::*field) {
  return masks == nullptr ? nullptr : &(masks->*field);
}

// Runs one direction of a recurrent layer over rows of a precomputed input
// projection; the returned rows are in input order.
std::vector<Var> RunDirection(const LstmCellVars &cell, Var projected, bool reverse) {
  Graph &g = *projected.graph;
  const std::size_t steps = projected.shape()[0];
  std::vector<Var> out(steps);
  LstmState state = ZeroLstmState(g, cell.cell_size);
  for (std::size_t k = 0; k < steps; ++k) {
    const std::size_t t = reverse ? steps - 1 - k : k;
    state = LstmStepProjected(cell, state, Row(projected, t));
    out[t] = state.h;
  }
  return out;
}

const Shape &ShapeOf(const ParameterSet &params, const std::string &name) {
  if (!params.Has(name)) throw ConfigError("parameter set lacks " + name);
  return params.Get(name).value.shape();
}

std::size_t Dim(const ParameterSet &params, const std::string &name, std::size_t axis) {
  const Shape &s = ShapeOf(params, name);
  if (axis >= s.size())
    throw ConfigError("parameter " + name + " has unexpected shape " + ShapeString(s));
  return s[axis];
}

}  // namespace

AttentionResult Attend(const AttentionVars &att, Var query, const EncodedSource &source) {
  Var q = Affine(query, att.w_query, att.bias);
  Var hidden = Tanh(AddBias(source.keys, q));
  Var energies = MatMul(hidden, att.v);
  Var weights = Softmax(energies, 0);
  Var context = Add(Row(source.annotations, 0), MatMul(weights, source.offsets));
  return AttentionResult{context, weights};
}

Var OutputScores(const OutputVars &out, Var decoder_output, Var context, Var prev_embedding,
                 const Tensor *hidden_mask) {
  Var x = Concat({decoder_output, context, prev_embedding});
  if (out.w_out) {
    x = Tanh(Affine(x, *out.w_out, *out.b_out));
    x = MaybeMask(*x.graph, x, hidden_mask);
  }
  return Affine(x, out.w_proj, out.b_proj);
}

Seq2SeqModel::Seq2SeqModel(ModelConfig config) : config_(std::move(config)) {
  config_.Finalize();
  CreateParameters();
}

void Seq2SeqModel::CreateParameters() {
  if (config_.encoder == EncoderKind::kSpeech) {
    const SpeechEncoderConfig &s = config_.speech;
    params_.Add(Join(kSpeech, "input1/W"), {s.input_dim, s.input_layer1});
    params_.Add(Join(kSpeech, "input1/b"), {s.input_layer1});
    params_.Add(Join(kSpeech, "input2/W"), {s.input_layer1, s.input_layer2});
    params_.Add(Join(kSpeech, "input2/b"), {s.input_layer2});
    params_.Add(Join(kSpeech, "conv1/filters"), {s.conv_filters, 3, 3, 1});
    params_.Add(Join(kSpeech, "conv1/bias"), {s.conv_filters});
    params_.Add(Join(kSpeech, "conv2/filters"), {s.conv_filters, 3, 3, s.conv_filters});
    params_.Add(Join(kSpeech, "conv2/bias"), {s.conv_filters});
    std::size_t in = s.ConvOutputDim();
    for (std::size_t l = 1; l <= s.num_layers; ++l) {
      const std::string layer = Join(kSpeech, "lstm" + std::to_string(l));
      AddRecurrentCell(&params_, Join(layer, "fw"), in, s.cell_size);
      AddRecurrentCell(&params_, Join(layer, "bw"), in, s.cell_size);
      in = s.AnnotationDim();
    }
  } else {
    const TextEncoderConfig &t = config_.text;
    params_.Add(Join(kText, "embedding"), {t.vocab_size, t.embedding_size});
    AddRecurrentCell(&params_, Join(kText, "lstm/fw"), t.embedding_size, t.cell_size);
    AddRecurrentCell(&params_, Join(kText, "lstm/bw"), t.embedding_size, t.cell_size);
  }

  const DecoderConfig &d = config_.decoder;
  params_.Add(Join(kDecoder, "embedding"), {d.vocab_size, d.embedding_size});
  AddRecurrentCell(&params_, Join(kDecoder, "update1"), d.embedding_size, d.cell_size);
  AddRecurrentCell(&params_, Join(kDecoder, "update2"), d.annotation_dim, d.cell_size);
  params_.Add(Join(kDecoder, "attention/W_query"), {d.cell_size, d.attention_size});
  params_.Add(Join(kDecoder, "attention/W_annot"), {d.annotation_dim, d.attention_size});
  params_.Add(Join(kDecoder, "attention/b"), {d.attention_size});
  params_.Add(Join(kDecoder, "attention/v"), {d.attention_size});
  std::size_t proj_in = d.OutputInputDim();
  if (d.output_layer > 0) {
    params_.Add(Join(kDecoder, "output/W_out"), {d.OutputInputDim(), d.output_layer});
    params_.Add(Join(kDecoder, "output/b_out"), {d.output_layer});
    proj_in = d.output_layer;
  }
  params_.Add(Join(kDecoder, "output/W_proj"), {proj_in, d.vocab_size});
  params_.Add(Join(kDecoder, "output/b_proj"), {d.vocab_size});
}

ModelConfig InferModelConfig(const ParameterSet &params) {
  ModelConfig c;
  const std::string sp(kSpeech), tx(kText), dec(kDecoder);
  if (params.Has(Join(sp, "input1/W"))) {
    c.encoder = EncoderKind::kSpeech;
    SpeechEncoderConfig &s = c.speech;
    s.input_dim = Dim(params, Join(sp, "input1/W"), 0);
    s.input_layer1 = Dim(params, Join(sp, "input1/W"), 1);
    s.input_layer2 = Dim(params, Join(sp, "input2/W"), 1);
    s.conv_filters = Dim(params, Join(sp, "conv1/filters"), 0);
    s.num_layers = 0;
    while (params.Has(Join(sp, "lstm" + std::to_string(s.num_layers + 1) + "/fw/W_h")))
      ++s.num_layers;
    if (s.num_layers == 0) throw ConfigError("speech encoder has no recurrent layers");
    s.cell_size = Dim(params, Join(sp, "lstm1/fw/W_h"), 0);
  } else if (params.Has(Join(tx, "embedding"))) {
    c.encoder = EncoderKind::kText;
    c.text.vocab_size = Dim(params, Join(tx, "embedding"), 0);
    c.text.embedding_size = Dim(params, Join(tx, "embedding"), 1);
    c.text.cell_size = Dim(params, Join(tx, "lstm/fw/W_h"), 0);
  } else {
    throw ConfigError("parameter set contains neither a speech nor a text encoder");
  }
  DecoderConfig &d = c.decoder;
  d.vocab_size = Dim(params, Join(dec, "embedding"), 0);
  d.embedding_size = Dim(params, Join(dec, "embedding"), 1);
  d.cell_size = Dim(params, Join(dec, "update1/W_h"), 0);
  d.attention_size = Dim(params, Join(dec, "attention/W_query"), 1);
  d.output_layer =
      params.Has(Join(dec, "output/W_out")) ? Dim(params, Join(dec, "output/W_out"), 1) : 0;
  c.Finalize();
  return c;
}

Seq2SeqModel Seq2SeqModel::FromParameters(const ParameterSet &params) {
  Seq2SeqModel model(InferModelConfig(params));
  const std::vector<std::string> expected = model.params_.Names();
  for (const std::string &name : expected) {
    const Shape &want = model.params_.Get(name).value.shape();
    const Shape &have = ShapeOf(params, name);
    if (want != have)
      throw ConfigError("parameter " + name + " has shape " + ShapeString(have) + ", expected " +
                        ShapeString(want));
    model.params_.Share(name, params.Shared(name));
  }
  for (const std::string &name : params.Names())
    if (!model.params_.Has(name)) throw ConfigError("unexpected parameter " + name);
  return model;
}

Seq2SeqModel Seq2SeqModel::Clone() const {
  Seq2SeqModel copy(config_);
  for (const std::string &name : params_.Names())
    copy.params_.Get(name).value = params_.Get(name).value;
  return copy;
}

void Seq2SeqModel::Initialize(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (const std::string &name : params_.Names()) {
    Tensor &t = params_.Get(name).value;
    const Shape &s = t.shape();
    if (s.size() == 2) {
      GlorotUniform(&t, s[0], s[1], &rng);
    } else if (s.size() == 4) {  // (count, kh, kw, depth)
      GlorotUniform(&t, s[1] * s[2] * s[3], s[0] * s[1] * s[2], &rng);
    } else if (name == Join(kDecoder, "attention/v")) {
      GlorotUniform(&t, s[0], 1, &rng);
    } else {
      t.Fill(0.0);
      const std::string prefix = name.substr(0, name.rfind('/'));
      if (name.ends_with("/b") && params_.Has(prefix + "/W_h")) {
        const std::size_t m = s[0] / 4;
        for (std::size_t j = m; j < 2 * m; ++j) t[j] = 1.0;
      }
    }
  }
}

Var Seq2SeqModel::BiLstm(Graph &g, const std::string &prefix, Var inputs) const {
  ParameterSet &ps = const_cast<ParameterSet &>(params_);
  const LstmCellVars fw = LstmCellVars::Bind(g, RecurrentCellParams::Find(ps, Join(prefix, "fw")));
  const LstmCellVars bw = LstmCellVars::Bind(g, RecurrentCellParams::Find(ps, Join(prefix, "bw")));
  std::vector<Var> forward = RunDirection(fw, Affine(inputs, fw.w_input, fw.bias), false);
  std::vector<Var> backward = RunDirection(bw, Affine(inputs, bw.w_input, bw.bias), true);
  return Concat({StackRows(forward), StackRows(backward)});
}

EncodedSource Seq2SeqModel::EncodeSpeech(Graph &g, const Tensor &features,
                                         const DropoutMasks *masks) const {
  if (config_.encoder != EncoderKind::kSpeech)
    throw ConfigError("EncodeSpeech called on a text-encoder model");
  const SpeechEncoderConfig &s = config_.speech;
  if (features.rank() != 2 || features.dim(1) != s.input_dim)
    throw DimensionError("speech features of shape " + ShapeString(features.shape()) +
                         " do not have " + std::to_string(s.input_dim) + " columns");
  if (!features.AllFinite()) throw NumericError("speech features contain non-finite values");
  auto p = [&](const std::string &n) -> Var {
    return g.Param(const_cast<Parameter &>(params_.Get(Join(kSpeech, n))));
  };

  const std::size_t frames = features.dim(0);
  Var x = g.Constant(features);
  x = MaybeMask(g, Tanh(Affine(x, p("input1/W"), p("input1/b"))),
                Pick(masks, &DropoutMasks::speech_input1));
  x = MaybeMask(g, Tanh(Affine(x, p("input2/W"), p("input2/b"))),
                Pick(masks, &DropoutMasks::speech_input2));
  x = Reshape(x, {frames, s.input_layer2, 1});
  x = Conv2d(x, p("conv1/filters"), p("conv1/bias"), 2, 2);
  x = Conv2d(x, p("conv2/filters"), p("conv2/bias"), 2, 2);
  const std::size_t reduced = x.shape()[0];
  x = Reshape(x, {reduced, s.ConvOutputDim()});
  for (std::size_t l = 0; l < s.num_layers; ++l) {
    x = BiLstm(g, Join(kSpeech, "lstm" + std::to_string(l + 1)), x);
    if (masks != nullptr && l < masks->speech_layers.size())
      x = MaybeMask(g, x, &masks->speech_layers[l]);
  }
  return Attach(g, x);
}

EncodedSource Seq2SeqModel::EncodeText(Graph &g, const std::vector<int> &tokens,
                                       const DropoutMasks *masks) const {
  if (config_.encoder != EncoderKind::kText)
    throw ConfigError("EncodeText called on a speech-encoder model");
  if (tokens.empty()) throw DimensionError("cannot encode an empty token sequence");
  Var table = g.Param(const_cast<Parameter &>(params_.Get(Join(kText, "embedding"))));
  Var x = MaybeMask(g, Gather(table, tokens), Pick(masks, &DropoutMasks::text_embedding));
  x = MaybeMask(g, BiLstm(g, Join(kText, "lstm"), x), Pick(masks, &DropoutMasks::text_output));
  return Attach(g, x);
}

EncodedSource Seq2SeqModel::Encode(Graph &g, const SourceSequence &source,
                                   const DropoutMasks *masks) const {
  return config_.encoder == EncoderKind::kSpeech ? EncodeSpeech(g, source.features, masks)
                                                 : EncodeText(g, source.tokens, masks);
}

EncodedSource Seq2SeqModel::Attach(Graph &g, Var annotations) const {
  const Shape &s = annotations.shape();
  if (s.size() != 2 || s[1] != config_.decoder.annotation_dim)
    throw DimensionError("annotations of shape " + ShapeString(s) + " do not have width " +
                         std::to_string(config_.decoder.annotation_dim));
  Var w_annot = g.Param(const_cast<Parameter &>(params_.Get(Join(kDecoder, "attention/W_annot"))));
  Var offsets = AddBias(annotations, Scale(Row(annotations, 0), -1.0));
  return EncodedSource{annotations, MatMul(annotations, w_annot), offsets};
}

DecoderVars Seq2SeqModel::BindDecoder(Graph &g) const {
  ParameterSet &ps = const_cast<ParameterSet &>(params_);
  auto p = [&](const std::string &n) { return g.Param(ps.Get(Join(kDecoder, n))); };
  DecoderVars v;
  v.embedding = p("embedding");
  v.update1 = LstmCellVars::Bind(g, RecurrentCellParams::Find(ps, Join(kDecoder, "update1")));
  v.update2 = LstmCellVars::Bind(g, RecurrentCellParams::Find(ps, Join(kDecoder, "update2")));
  v.attention = AttentionVars{p("attention/W_query"), p("attention/W_annot"), p("attention/b"),
                              p("attention/v")};
  if (config_.decoder.output_layer > 0) {
    v.output.w_out = p("output/W_out");
    v.output.b_out = p("output/b_out");
  }
  v.output.w_proj = p("output/W_proj");
  v.output.b_proj = p("output/b_proj");
  return v;
}

DecoderState Seq2SeqModel::InitialState(Graph &g) const {
  const DecoderConfig &d = config_.decoder;
  DecoderState s;
  s.first = ZeroLstmState(g, d.cell_size);
  s.second = ZeroLstmState(g, d.cell_size);
  s.context = g.Input(Tensor(Shape{d.annotation_dim}));
  s.prev_symbol = Vocabulary::kBos;
  return s;
}

DecoderStepResult Seq2SeqModel::DecoderStep(const DecoderVars &vars, const DecoderState &state,
                                            const EncodedSource &source,
                                            const DropoutMasks *masks) const {
  Graph &g = *vars.embedding.graph;
  if (state.prev_symbol < 0 ||
      static_cast<std::size_t>(state.prev_symbol) >= config_.decoder.vocab_size)
    throw DimensionError("previous symbol " + std::to_string(state.prev_symbol) +
                         " outside target vocabulary of size " +
                         std::to_string(config_.decoder.vocab_size));
  Var emb = MaybeMask(g, Row(vars.embedding, static_cast<std::size_t>(state.prev_symbol)),
                      Pick(masks, &DropoutMasks::target_embedding));
  DecoderStepResult r;
  r.state.first = LstmStep(vars.update1, state.second, emb);
  AttentionResult att = Attend(vars.attention, r.state.first.h, source);
  r.state.second = LstmStep(vars.update2, r.state.first, att.context);
  r.state.context = att.context;
  r.state.prev_symbol = state.prev_symbol;
  r.weights = att.weights;
  Var out = MaybeMask(g, r.state.second.h, Pick(masks, &DropoutMasks::decoder_output));
  r.scores = OutputScores(vars.output, out, att.context, emb,
                          Pick(masks, &DropoutMasks::output_hidden));
  return r;
}

Var Seq2SeqModel::TeacherForcedLoss(Graph &g, const SourceSequence &source,
                                    const std::vector<int> &targets,
                                    const DropoutMasks *masks,
                                    const std::vector<int> *history) const {
  if (targets.empty()) throw DimensionError("empty target sequence");
  if (history != nullptr && history->size() != targets.size())
    throw DimensionError("decoder history and targets differ in length");
  const EncodedSource enc = Encode(g, source, masks);
  const DecoderVars vars = BindDecoder(g);
  DecoderState state = InitialState(g);
  std::optional<Var> total;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    DecoderStepResult step = DecoderStep(vars, state, enc, masks);
    Var loss = CrossEntropy(step.scores, static_cast<std::size_t>(targets[t]));
    total = total ? Add(*total, loss) : loss;
    state = step.state;
    state.prev_symbol = history ? (*history)[t] : targets[t];
  }
  return *total;
}

std::size_t ArgMax(const Tensor &scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i)
    if (scores[i] > scores[best]) best = i;
  return best;
}

}  // namespace slt

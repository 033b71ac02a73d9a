// tests/unit/model-test.cc
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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "slt/base/error.h"
#include "slt/model/checkpoint.h"
#include "slt/model/seq2seq.h"
#include "slt/tensor/grad-check.h"
#include "slt/tensor/ops.h"
#include "slt/text/vocabulary.h"

using namespace slt;
namespace fs = std::filesystem;

namespace {

using Vec = std::vector<double>;

Tensor RandomTensor(const Shape &shape, std::mt19937_64 &rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Tensor t(shape);
  for (double &v : t.values()) v = u(rng);
  return t;
}

void RandomizeParams(ParameterSet &ps, std::mt19937_64 &rng, double scale = 0.5) {
  for (Parameter *p : ps.All()) p->value = RandomTensor(p->value.shape(), rng, scale);
}

ModelConfig SpeechConfig(std::size_t layer1, std::size_t layer2, std::size_t filters,
                         std::size_t layers, std::size_t m, std::size_t m_dec, std::size_t k,
                         std::size_t vocab, std::size_t l) {
  ModelConfig c;
  c.encoder = EncoderKind::kSpeech;
  c.speech.input_layer1 = layer1;
  c.speech.input_layer2 = layer2;
  c.speech.conv_filters = filters;
  c.speech.num_layers = layers;
  c.speech.cell_size = m;
  c.decoder.vocab_size = vocab;
  c.decoder.cell_size = m_dec;
  c.decoder.attention_size = m_dec;
  c.decoder.embedding_size = k;
  c.decoder.output_layer = l;
  return c;
}

ModelConfig TextConfig(std::size_t src_vocab, std::size_t emb, std::size_t m, std::size_t m_dec,
                       std::size_t k, std::size_t vocab, std::size_t l) {
  ModelConfig c;
  c.encoder = EncoderKind::kText;
  c.text.vocab_size = src_vocab;
  c.text.embedding_size = emb;
  c.text.cell_size = m;
  c.decoder.vocab_size = vocab;
  c.decoder.cell_size = m_dec;
  c.decoder.attention_size = m_dec;
  c.decoder.embedding_size = k;
  c.decoder.output_layer = l;
  return c;
}

// ---- plain-double reference implementation used as an oracle ----

Vec VecMat(const Vec &x, const Tensor &w) {
  Vec y(w.dim(1), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += x[i] * w.at(i, j);
  return y;
}

Vec Plus(Vec a, const Vec &b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

Vec AsVec(const Tensor &t) { return Vec(t.values().begin(), t.values().end()); }

double Sigm(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct RefState {
  Vec c, h;
};

RefState RefLstm(const ParameterSet &ps, const std::string &prefix, const RefState &prev,
                 const Vec &x) {
  const Tensor &wx = ps.Get(prefix + "/W_x").value;
  const Tensor &wh = ps.Get(prefix + "/W_h").value;
  const Vec gates = Plus(Plus(VecMat(x, wx), VecMat(prev.h, wh)), AsVec(ps.Get(prefix + "/b").value));
  const std::size_t m = prev.c.size();
  RefState s{Vec(m), Vec(m)};
  for (std::size_t j = 0; j < m; ++j) {
    const double i = Sigm(gates[j]), f = Sigm(gates[m + j]), o = Sigm(gates[2 * m + j]);
    const double g = std::tanh(gates[3 * m + j]);
    s.c[j] = f * prev.c[j] + i * g;
    s.h[j] = o * std::tanh(s.c[j]);
  }
  return s;
}

struct RefAttention {
  Vec weights, context;
};

RefAttention RefAttend(const ParameterSet &ps, const Vec &query, const std::vector<Vec> &h) {
  const Vec q = Plus(VecMat(query, ps.Get("decoder/attention/W_query").value),
                     AsVec(ps.Get("decoder/attention/b").value));
  const Tensor &v = ps.Get("decoder/attention/v").value;
  Vec e(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const Vec pre = Plus(VecMat(h[i], ps.Get("decoder/attention/W_annot").value), q);
    e[i] = 0.0;
    for (std::size_t j = 0; j < pre.size(); ++j) e[i] += v[j] * std::tanh(pre[j]);
  }
  double z = 0.0;
  for (double x : e) z += std::exp(x);
  RefAttention r{Vec(h.size()), Vec(h[0].size(), 0.0)};
  for (std::size_t i = 0; i < h.size(); ++i) {
    r.weights[i] = std::exp(e[i]) / z;
    for (std::size_t j = 0; j < h[0].size(); ++j) r.context[j] += r.weights[i] * h[i][j];
  }
  return r;
}

std::vector<Vec> Rows(const Tensor &t) {
  std::vector<Vec> rows(t.dim(0), Vec(t.dim(1)));
  for (std::size_t i = 0; i < t.dim(0); ++i)
    for (std::size_t j = 0; j < t.dim(1); ++j) rows[i][j] = t.at(i, j);
  return rows;
}

std::vector<Parameter *> AllParams(Seq2SeqModel &model) { return model.params().All(); }

}  // namespace

TEST_CASE("speech encoder shape law") {
  ModelConfig c;
  c.decoder.vocab_size = 10;
  Seq2SeqModel model(c);
  model.Initialize(1);
  CHECK(model.config().speech.ConvOutputDim() == 512);
  std::mt19937_64 rng(2);
  for (std::size_t frames : {100u, 1u, 7u}) {
    Graph g(false);
    const Tensor x = RandomTensor({frames, 41}, rng);
    EncodedSource enc = model.EncodeSpeech(g, x);
    const std::size_t expect = (((frames + 1) / 2) + 1) / 2;
    CHECK(enc.annotations.shape() == Shape{expect, 512});
  }
}

TEST_CASE("speech encoder rejects bad input") {
  Seq2SeqModel model(SpeechConfig(4, 4, 2, 1, 2, 2, 2, 5, 0));
  Graph g(false);
  CHECK_THROWS_AS(model.EncodeSpeech(g, Tensor({3, 40})), DimensionError);
  Tensor bad({3, 41});
  bad[5] = std::nan("");
  CHECK_THROWS_AS(model.EncodeSpeech(g, bad), NumericError);
}

TEST_CASE("text encoder shape and zero network") {
  Seq2SeqModel model(TextConfig(9, 3, 4, 4, 3, 6, 0));
  Graph g(false);
  EncodedSource enc = model.EncodeText(g, {4, 5, 6, 7, 8});
  CHECK(enc.annotations.shape() == Shape{5, 8});
  for (double v : enc.annotations.value().values()) CHECK(v == 0.0);
  CHECK_THROWS_AS(model.EncodeText(g, {}), DimensionError);
  CHECK_THROWS_AS(model.EncodeText(g, {9}), DimensionError);
}

TEST_CASE("bidirectional layer is reversal symmetric with tied directions") {
  std::mt19937_64 rng(3);
  Seq2SeqModel model(TextConfig(8, 3, 4, 4, 3, 6, 0));
  RandomizeParams(model.params(), rng);
  for (const char *n : {"W_x", "W_h", "b"})
    model.params().Get(std::string("text_encoder/lstm/bw/") + n).value =
        model.params().Get(std::string("text_encoder/lstm/fw/") + n).value;
  Graph g(false);
  const Tensor fwd = model.EncodeText(g, {4, 5, 6}).annotations.value();
  const Tensor rev = model.EncodeText(g, {6, 5, 4}).annotations.value();
  for (std::size_t t = 0; t < 3; ++t)
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(std::fabs(rev.at(t, j) - fwd.at(2 - t, 4 + j)) < 1e-12);
      CHECK(std::fabs(rev.at(t, 4 + j) - fwd.at(2 - t, j)) < 1e-12);
    }
}

TEST_CASE("speech encoder is reversal symmetric for a symmetric configuration") {
  std::mt19937_64 rng(4);
  Seq2SeqModel model(SpeechConfig(5, 6, 2, 2, 3, 3, 2, 5, 0));
  ParameterSet &ps = model.params();
  RandomizeParams(ps, rng);
  // time-symmetric kernels: tap 0 equals tap 2 along the time axis
  for (const char *conv : {"speech_encoder/conv1/filters", "speech_encoder/conv2/filters"}) {
    Tensor &f = ps.Get(conv).value;
    const std::size_t per_tap = f.dim(2) * f.dim(3);
    const std::size_t per_filter = 3 * per_tap;
    for (std::size_t k = 0; k < f.dim(0); ++k)
      for (std::size_t i = 0; i < per_tap; ++i) f[k * per_filter + 2 * per_tap + i] = f[k * per_filter + i];
  }
  // backward cells mirror the forward ones; above the first layer the input
  // halves arrive swapped, so the rows of W_x are swapped too
  for (std::size_t l = 1; l <= 2; ++l) {
    const std::string base = "speech_encoder/lstm" + std::to_string(l);
    ps.Get(base + "/bw/W_h").value = ps.Get(base + "/fw/W_h").value;
    ps.Get(base + "/bw/b").value = ps.Get(base + "/fw/b").value;
    const Tensor &wx = ps.Get(base + "/fw/W_x").value;
    Tensor mirrored = wx;
    if (l > 1) {
      const std::size_t half = wx.dim(0) / 2;
      for (std::size_t r = 0; r < wx.dim(0); ++r)
        for (std::size_t c = 0; c < wx.dim(1); ++c) mirrored.at(r, c) = wx.at((r + half) % wx.dim(0), c);
    }
    ps.Get(base + "/bw/W_x").value = mirrored;
  }

  const Tensor x = RandomTensor({9, 41}, rng);
  Tensor x_rev({9, 41});
  for (std::size_t t = 0; t < 9; ++t)
    for (std::size_t j = 0; j < 41; ++j) x_rev.at(t, j) = x.at(8 - t, j);
  Graph g(false);
  const Tensor a = model.EncodeSpeech(g, x).annotations.value();
  const Tensor b = model.EncodeSpeech(g, x_rev).annotations.value();
  REQUIRE(a.shape() == Shape{3, 6});
  double worst = 0.0;
  for (std::size_t t = 0; t < 3; ++t)
    for (std::size_t j = 0; j < 3; ++j) {
      worst = std::max(worst, std::fabs(b.at(t, j) - a.at(2 - t, 3 + j)));
      worst = std::max(worst, std::fabs(b.at(t, 3 + j) - a.at(2 - t, j)));
    }
  CHECK(worst < 1e-12);
}

TEST_CASE("attention special cases") {
  std::mt19937_64 rng(5);
  Seq2SeqModel model(TextConfig(6, 2, 2, 3, 2, 5, 0));
  SUBCASE("zero parameters give uniform weights") {
    Graph g(false);
    EncodedSource src = model.Attach(g, g.Input(RandomTensor({4, 4}, rng)));
    DecoderVars vars = model.BindDecoder(g);
    AttentionResult r = Attend(vars.attention, g.Input(RandomTensor({3}, rng)), src);
    for (double w : r.weights.value().values()) CHECK(w == 0.25);
  }
  SUBCASE("identical annotations are returned exactly") {
    RandomizeParams(model.params(), rng, 2.0);
    const Tensor u = RandomTensor({4}, rng);
    Tensor h({5, 4});
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 4; ++j) h.at(i, j) = u[j];
    Graph g(false);
    EncodedSource src = model.Attach(g, g.Input(h));
    DecoderVars vars = model.BindDecoder(g);
    AttentionResult r = Attend(vars.attention, g.Input(RandomTensor({3}, rng)), src);
    CHECK(r.context.value() == u);
  }
}

TEST_CASE("attention matches a hand evaluation on two annotations") {
  Seq2SeqModel model(TextConfig(6, 2, 1, 2, 2, 5, 0));
  ParameterSet &ps = model.params();
  ps.Get("decoder/attention/W_query").value = Tensor::Matrix(2, 2, {0.5, -1.0, 0.25, 2.0});
  ps.Get("decoder/attention/W_annot").value = Tensor::Matrix(2, 2, {1.0, 0.0, -0.5, 1.5});
  ps.Get("decoder/attention/b").value = Tensor::Vector({0.1, -0.2});
  ps.Get("decoder/attention/v").value = Tensor::Vector({1.0, -2.0});
  Graph g(false);
  EncodedSource src = model.Attach(g, g.Input(Tensor::Matrix(2, 2, {1.0, 2.0, -1.0, 0.5})));
  AttentionResult r =
      Attend(model.BindDecoder(g).attention, g.Input(Tensor::Vector({0.3, -0.4})), src);
  // query . W_q + b = [0.15 - 0.1 + 0.1, -0.3 - 0.8 - 0.2] = [0.15, -1.3]
  // h1 . W_a = [1 - 1, 3] = [0, 3];      e1 = tanh(0.15) - 2 tanh(1.7)
  // h2 . W_a = [-1 - 0.25, 0.75];        e2 = tanh(-1.1) - 2 tanh(-0.55)
  const double e1 = std::tanh(0.15) - 2.0 * std::tanh(1.7);
  const double e2 = std::tanh(-1.1) - 2.0 * std::tanh(-0.55);
  const double w1 = 1.0 / (1.0 + std::exp(e2 - e1));
  CHECK(std::fabs(r.weights.value()[0] - w1) < 1e-10);
  CHECK(std::fabs(r.weights.value()[1] - (1.0 - w1)) < 1e-10);
  CHECK(std::fabs(r.context.value()[0] - (w1 * 1.0 + (1 - w1) * -1.0)) < 1e-10);
  CHECK(std::fabs(r.context.value()[1] - (w1 * 2.0 + (1 - w1) * 0.5)) < 1e-10);
}

TEST_CASE("zero decoder emits zero scores") {
  Seq2SeqModel model(TextConfig(6, 2, 2, 3, 2, 5, 4));
  Graph g(false);
  EncodedSource src = model.EncodeText(g, {4, 5});
  DecoderVars vars = model.BindDecoder(g);
  DecoderStepResult r = model.DecoderStep(vars, model.InitialState(g), src);
  for (double z : r.scores.value().values()) CHECK(z == 0.0);
  CHECK(ArgMax(r.scores.value()) == 0);
}

TEST_CASE("output layer dimensions") {
  ModelConfig c = TextConfig(6, 4, 256, 512, 128, 30, 512);
  Seq2SeqModel model(c);
  CHECK(model.config().decoder.OutputInputDim() == 512 + 512 + 128);
  CHECK(model.params().Get("decoder/output/W_out").value.shape() == Shape{1152, 512});
  CHECK(model.params().Get("decoder/output/W_proj").value.shape() == Shape{512, 30});

  Seq2SeqModel direct(TextConfig(6, 4, 3, 5, 2, 7, 0));
  CHECK_FALSE(direct.params().Has("decoder/output/W_out"));
  CHECK(direct.params().Get("decoder/output/W_proj").value.shape() == Shape{5 + 6 + 2, 7});

  SUBCASE("zero weights with a bias return the bias") {
    direct.params().Get("decoder/output/b_proj").value =
        Tensor::Vector({1, -2, 3, 0.5, 0, 7, -1});
    Graph g(false);
    DecoderVars vars = direct.BindDecoder(g);
    Var z = OutputScores(vars.output, g.Input(Tensor(Shape{5}, 1.0)), g.Input(Tensor(Shape{6}, 2.0)),
                         g.Input(Tensor(Shape{2}, 3.0)));
    CHECK(z.value() == direct.params().Get("decoder/output/b_proj").value);
  }
  SUBCASE("hidden layer has width l") {
    std::mt19937_64 rng(6);
    RandomizeParams(model.params(), rng, 0.05);
    Graph g(false);
    DecoderVars vars = model.BindDecoder(g);
    const std::size_t before = g.size();
    Var z = OutputScores(vars.output, g.Input(Tensor(Shape{512}, 0.1)),
                         g.Input(Tensor(Shape{512}, 0.1)), g.Input(Tensor(Shape{128}, 0.1)));
    CHECK(z.shape() == Shape{30});
    bool saw_hidden = false;
    for (std::size_t id = before; id < g.size(); ++id)
      if (g.value(id).shape() == Shape{512} && id != z.id) saw_hidden = true;
    CHECK(saw_hidden);
  }
}

TEST_CASE("decoder steps match a hand evaluation of the toy network") {
  // m = m' = 2, k = 2, |V| = 3, T' = 2
  for (std::size_t l : {0u, 3u}) {
    CAPTURE(l);
    std::mt19937_64 rng(7 + l);
    Seq2SeqModel model(TextConfig(5, 2, 2, 2, 2, 3, l));
    RandomizeParams(model.params(), rng, 0.8);
    const ParameterSet &ps = model.params();
    const Tensor h = RandomTensor({2, 4}, rng);

    Graph g(false);
    EncodedSource src = model.Attach(g, g.Input(h));
    DecoderVars vars = model.BindDecoder(g);
    DecoderState state = model.InitialState(g);

    RefState s2{Vec(2, 0.0), Vec(2, 0.0)};
    int prev = Vocabulary::kBos;
    for (int y : {2, 0, 1}) {
      DecoderStepResult r = model.DecoderStep(vars, state, src);
      // update1 on (s'_{t-1}, E(y_{t-1})), attention on o_t, update2 on (s_t, c_t)
      const Tensor &emb_table = ps.Get("decoder/embedding").value;
      const Vec emb{emb_table.at(prev, 0), emb_table.at(prev, 1)};
      const RefState s1 = RefLstm(ps, "decoder/update1", s2, emb);
      const RefAttention att = RefAttend(ps, s1.h, Rows(h));
      s2 = RefLstm(ps, "decoder/update2", s1, att.context);
      Vec x = s2.h;
      x.insert(x.end(), att.context.begin(), att.context.end());
      x.insert(x.end(), emb.begin(), emb.end());
      if (l > 0) {
        x = Plus(VecMat(x, ps.Get("decoder/output/W_out").value),
                 AsVec(ps.Get("decoder/output/b_out").value));
        for (double &v : x) v = std::tanh(v);
      }
      const Vec z = Plus(VecMat(x, ps.Get("decoder/output/W_proj").value),
                         AsVec(ps.Get("decoder/output/b_proj").value));
      REQUIRE(r.scores.value().size() == 3);
      for (std::size_t i = 0; i < 3; ++i) CHECK(std::fabs(r.scores.value()[i] - z[i]) < 1e-10);
      for (std::size_t i = 0; i < 2; ++i)
        CHECK(std::fabs(r.weights.value()[i] - att.weights[i]) < 1e-10);
      state = r.state;
      state.prev_symbol = prev = y;
    }
  }
}

TEST_CASE("attention weights and context containment over random steps") {
  std::mt19937_64 rng(8);
  Seq2SeqModel model(TextConfig(9, 3, 3, 4, 3, 9, 0));
  RandomizeParams(model.params(), rng, 1.0);
  std::uniform_int_distribution<int> sym(0, 8), len(1, 6);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<int> tokens(len(rng));
    for (int &t : tokens) t = sym(rng);
    Graph g(false);
    EncodedSource src = model.EncodeText(g, tokens);
    const Tensor h = src.annotations.value();
    DecoderVars vars = model.BindDecoder(g);
    DecoderState state = model.InitialState(g);
    for (int step = 0; step < 5; ++step) {
      DecoderStepResult r = model.DecoderStep(vars, state, src);
      double total = 0.0;
      for (double w : r.weights.value().values()) {
        CHECK(w >= 0.0);
        total += w;
      }
      CHECK(std::fabs(total - 1.0) < 1e-9);
      for (std::size_t j = 0; j < h.dim(1); ++j) {
        double lo = h.at(0, j), hi = h.at(0, j);
        for (std::size_t i = 1; i < h.dim(0); ++i) {
          lo = std::min(lo, h.at(i, j));
          hi = std::max(hi, h.at(i, j));
        }
        const double c = r.state.context.value()[j];
        CHECK(c >= lo - 1e-12);
        CHECK(c <= hi + 1e-12);
      }
      state = r.state;
      state.prev_symbol = sym(rng);
    }
  }
}

TEST_CASE("decoder step gradients") {
  // five annotations, |V| = 7; the annotations themselves are parameters
  std::mt19937_64 rng(9);
  for (std::size_t l : {0u, 4u}) {
    Seq2SeqModel model(TextConfig(5, 2, 2, 3, 3, 7, l));
    RandomizeParams(model.params(), rng, 0.7);
    Parameter annotations{"annotations", RandomTensor({5, 4}, rng), Tensor({5, 4})};
    auto loss = [&](Graph &g) {
      EncodedSource src = model.Attach(g, g.Param(annotations));
      DecoderVars vars = model.BindDecoder(g);
      DecoderState state = model.InitialState(g);
      std::optional<Var> total;
      for (int y : {3, 6}) {
        DecoderStepResult r = model.DecoderStep(vars, state, src);
        Var ce = CrossEntropy(r.scores, y);
        total = total ? Add(*total, ce) : ce;
        state = r.state;
        state.prev_symbol = y;
      }
      return *total;
    };
    std::vector<Parameter *> params = AllParams(model);
    params.push_back(&annotations);
    const GradCheckResult res = GradCheck(loss, params, 1e-5);
    INFO(res.worst_parameter << "[" << res.worst_index << "] analytic " << res.analytic
                             << " numeric " << res.numeric);
    CHECK(res.max_relative_error < 1e-4);
  }
}

TEST_CASE("speech encoder gradients") {
  std::mt19937_64 rng(10);
  Seq2SeqModel model(SpeechConfig(6, 8, 3, 3, 3, 3, 2, 5, 0));
  model.Initialize(11);
  const Tensor x = RandomTensor({12, 41}, rng);
  const Tensor weights = RandomTensor({3, 6}, rng);
  auto loss = [&](Graph &g) {
    EncodedSource src = model.EncodeSpeech(g, x);
    return Sum(Mul(src.annotations, g.Constant(weights)));
  };
  std::vector<Parameter *> params;
  for (const std::string &name : model.params().Names())
    if (name.starts_with("speech_encoder/")) params.push_back(&model.params().Get(name));
  const GradCheckResult res = GradCheck(loss, params, 1e-5);
  INFO(res.worst_parameter << "[" << res.worst_index << "] analytic " << res.analytic
                           << " numeric " << res.numeric);
  CHECK(res.max_relative_error < 1e-4);
}

TEST_CASE("text encoder gradients") {
  std::mt19937_64 rng(12);
  Seq2SeqModel model(TextConfig(8, 3, 3, 3, 2, 6, 0));
  RandomizeParams(model.params(), rng, 0.6);
  const Tensor weights = RandomTensor({4, 6}, rng);
  auto loss = [&](Graph &g) {
    return Sum(Mul(model.EncodeText(g, {4, 7, 5, 4}).annotations, g.Constant(weights)));
  };
  std::vector<Parameter *> params;
  for (const std::string &name : model.params().Names())
    if (name.starts_with("text_encoder/")) params.push_back(&model.params().Get(name));
  const GradCheckResult res = GradCheck(loss, params, 1e-5);
  INFO(res.worst_parameter << "[" << res.worst_index << "] analytic " << res.analytic << " numeric " << res.numeric);
  CHECK(res.max_relative_error < 1e-4);
}

TEST_CASE("end-to-end teacher-forced loss gradients and determinism") {
  std::mt19937_64 rng(13);
  Seq2SeqModel model(SpeechConfig(6, 8, 2, 2, 3, 4, 3, 8, 5));
  model.Initialize(14);
  SourceSequence src{RandomTensor({10, 41}, rng), {}};
  const std::vector<int> targets{5, 4, 7, Vocabulary::kEos};
  auto loss = [&](Graph &g) { return model.TeacherForcedLoss(g, src, targets); };
  const GradCheckResult res = GradCheck(loss, AllParams(model), 5e-3, Stencil::kFivePoint);
  INFO(res.worst_parameter << "[" << res.worst_index << "] analytic " << res.analytic << " numeric " << res.numeric);
  CHECK(res.max_relative_error < 1e-4);

  auto run = [&]() {
    model.params().ZeroGrad();
    Graph g;
    Var l = model.TeacherForcedLoss(g, src, targets);
    g.Backward(l);
    std::vector<Tensor> grads{Tensor::Scalar(l.value().item())};
    for (Parameter *p : model.params().All()) grads.push_back(p->grad);
    return grads;
  };
  CHECK(run() == run());
}

TEST_CASE("dropout masks scale the marked activations") {
  std::mt19937_64 rng(15);
  Seq2SeqModel model(TextConfig(8, 3, 3, 3, 2, 6, 0));
  RandomizeParams(model.params(), rng, 0.6);
  SourceSequence src{Tensor(), {4, 5, 6}};
  DropoutMasks ones;
  ones.text_embedding = Tensor(Shape{3}, 1.0);
  ones.text_output = Tensor(Shape{6}, 1.0);
  ones.target_embedding = Tensor(Shape{2}, 1.0);
  ones.decoder_output = Tensor(Shape{3}, 1.0);
  Graph g1(false), g2(false), g3(false);
  const double plain = model.TeacherForcedLoss(g1, src, {4, 2}).value().item();
  CHECK(model.TeacherForcedLoss(g2, src, {4, 2}, &ones).value().item() == plain);
  DropoutMasks zero = ones;
  zero.text_output.Fill(0.0);
  zero.target_embedding.Fill(0.0);
  zero.decoder_output.Fill(0.0);
  // nothing reaches the scores but b_proj: loss is the uniform-like softmax of b_proj
  const Tensor &b = model.params().Get("decoder/output/b_proj").value;
  double lse = 0.0;
  for (double v : b.values()) lse += std::exp(v);
  lse = std::log(lse);
  const double expect = (lse - b[4]) + (lse - b[2]);
  CHECK(std::fabs(model.TeacherForcedLoss(g3, src, {4, 2}, &zero).value().item() - expect) < 1e-12);
}

TEST_CASE("checkpoint round trip and configuration inference") {
  const fs::path dir = fs::temp_directory_path() / "slt-model-test";
  fs::create_directories(dir);
  for (const ModelConfig &c :
       {SpeechConfig(6, 8, 2, 3, 3, 4, 3, 8, 5), TextConfig(8, 3, 3, 3, 2, 6, 0)}) {
    Seq2SeqModel model(c);
    model.Initialize(16);
    const std::string path = (dir / "ckpt").string();
    SaveModel(path, model);
    Seq2SeqModel loaded = LoadModel(path);
    CHECK(loaded.config().Describe() == model.config().Describe());
    ParameterSet rounded = model.Clone().params();
    RoundToStoragePrecision(&rounded);
    for (const std::string &name : model.params().Names())
      CHECK(loaded.params().Get(name).value == rounded.Get(name).value);
    // reloading a float-exact model is bitwise lossless
    SaveModel(path, loaded);
    Seq2SeqModel again = LoadModel(path);
    for (const std::string &name : model.params().Names())
      CHECK(again.params().Get(name).value == loaded.params().Get(name).value);
  }
  {
    std::ofstream os(dir / "bad", std::ios::binary);
    os << "SLTX0000";
  }
  CHECK_THROWS_AS(LoadParameters((dir / "bad").string()), FormatError);
  CHECK_THROWS_AS(LoadParameters((dir / "missing").string()), FormatError);

  ParameterSet partial;
  partial.Add("decoder/embedding", {4, 2});
  CHECK_THROWS_AS(Seq2SeqModel::FromParameters(partial), ConfigError);
}

TEST_CASE("clones are independent, copies alias") {
  Seq2SeqModel model(TextConfig(8, 3, 3, 3, 2, 6, 0));
  model.Initialize(17);
  Seq2SeqModel clone = model.Clone();
  Seq2SeqModel alias = model;
  model.params().Get("decoder/embedding").value[0] += 1.0;
  CHECK(alias.params().Get("decoder/embedding").value == model.params().Get("decoder/embedding").value);
  CHECK_FALSE(clone.params().Get("decoder/embedding").value ==
              model.params().Get("decoder/embedding").value);
}

TEST_CASE("initialization is seeded") {
  Seq2SeqModel a(TextConfig(8, 3, 3, 3, 2, 6, 4)), b(TextConfig(8, 3, 3, 3, 2, 6, 4));
  a.Initialize(5);
  b.Initialize(5);
  for (const std::string &name : a.params().Names())
    CHECK(a.params().Get(name).value == b.params().Get(name).value);
  const Tensor &bias = a.params().Get("decoder/update1/b").value;
  CHECK(bias[0] == 0.0);
  CHECK(bias[3] == 1.0);  // forget gate block [m, 2m)
  CHECK(bias[6] == 0.0);
}

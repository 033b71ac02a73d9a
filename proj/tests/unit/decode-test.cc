// tests/unit/decode-test.cc
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

#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "slt/base/error.h"
#include "slt/decode/search.h"
#include "slt/tensor/ops.h"
#include "slt/text/normalize.h"

using namespace slt;

namespace {

void RandomizeParams(ParameterSet &ps, std::mt19937_64 &rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  for (Parameter *p : ps.All())
    for (double &v : p->value.values()) v = u(rng);
}

Seq2SeqModel TextModel(std::size_t vocab, std::size_t src_vocab = 6) {
  ModelConfig c;
  c.encoder = EncoderKind::kText;
  c.text.vocab_size = src_vocab;
  c.text.embedding_size = 3;
  c.text.cell_size = 3;
  c.decoder.vocab_size = vocab;
  c.decoder.cell_size = 4;
  c.decoder.attention_size = 4;
  c.decoder.embedding_size = 3;
  c.decoder.output_layer = 0;
  return Seq2SeqModel(c);
}

Seq2SeqModel SpeechModel(std::size_t vocab) {
  ModelConfig c;
  c.speech.input_layer1 = 6;
  c.speech.input_layer2 = 8;
  c.speech.conv_filters = 2;
  c.speech.num_layers = 1;
  c.speech.cell_size = 3;
  c.decoder.vocab_size = vocab;
  c.decoder.cell_size = 4;
  c.decoder.attention_size = 4;
  c.decoder.embedding_size = 3;
  c.decoder.output_layer = 0;
  return Seq2SeqModel(c);
}

// Log-probability of a complete or truncated sequence, from the training loss.
double SequenceLogProb(const Seq2SeqModel &model, const SourceSequence &src,
                       const std::vector<int> &tokens, bool finished) {
  std::vector<int> targets = tokens;
  if (finished) targets.push_back(Vocabulary::kEos);
  Graph g(false);
  return -model.TeacherForcedLoss(g, src, targets).value().item();
}

// All sequences the search space contains: EOS-terminated ones of length
// <= max_len and unterminated ones of exactly max_len symbols.
std::vector<Hypothesis> Enumerate(const Seq2SeqModel &model, const SourceSequence &src,
                                  std::size_t vocab, std::size_t max_len) {
  std::vector<Hypothesis> all;
  std::function<void(std::vector<int>)> rec = [&](std::vector<int> prefix) {
    Hypothesis done{prefix, SequenceLogProb(model, src, prefix, true), true};
    all.push_back(done);
    if (prefix.size() + 1 == max_len) {
      for (std::size_t v = 0; v < vocab; ++v) {
        if (static_cast<int>(v) == Vocabulary::kEos) continue;
        std::vector<int> full = prefix;
        full.push_back(static_cast<int>(v));
        all.push_back(Hypothesis{full, SequenceLogProb(model, src, full, false), false});
      }
      return;
    }
    for (std::size_t v = 0; v < vocab; ++v) {
      if (static_cast<int>(v) == Vocabulary::kEos) continue;
      std::vector<int> next = prefix;
      next.push_back(static_cast<int>(v));
      rec(next);
    }
  };
  rec({});
  return all;
}

SourceSequence Tokens(std::vector<int> ids) { return SourceSequence{Tensor(), std::move(ids)}; }

}  // namespace

TEST_CASE("zero model greedy emits id 0 until max_len") {
  Seq2SeqModel model = TextModel(5);
  const Hypothesis h = GreedyDecode({&model}, Tokens({4, 5}), 7);
  CHECK(h.tokens == std::vector<int>(7, 0));
  CHECK_FALSE(h.finished);
  CHECK(h.score == doctest::Approx(7 * std::log(1.0 / 5)));
}

TEST_CASE("beam search equals exhaustive enumeration on tiny vocabularies") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    Seq2SeqModel model = TextModel(3);
    RandomizeParams(model.params(), rng, 1.5);
    const SourceSequence src = Tokens({4, 5, 3});
    BeamConfig cfg;
    cfg.width = 27;
    cfg.max_len = 3;
    const std::vector<Hypothesis> beam = BeamDecode({&model}, src, cfg);
    const std::vector<Hypothesis> all = Enumerate(model, src, 3, 3);
    REQUIRE(beam.size() == all.size());

    const auto best_norm = std::max_element(all.begin(), all.end(), [](auto &a, auto &b) {
      return a.NormalizedScore(1.0) < b.NormalizedScore(1.0);
    });
    CHECK(beam.front().tokens == best_norm->tokens);
    CHECK(beam.front().finished == best_norm->finished);
    CHECK(std::fabs(beam.front().score - best_norm->score) < 1e-9);

    const auto best_raw =
        std::max_element(all.begin(), all.end(), [](auto &a, auto &b) { return a.score < b.score; });
    const auto beam_raw =
        std::max_element(beam.begin(), beam.end(), [](auto &a, auto &b) { return a.score < b.score; });
    CHECK(beam_raw->tokens == best_raw->tokens);
  }
}

TEST_CASE("width one is greedy, wider beams never score worse") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    Seq2SeqModel model = TextModel(7);
    RandomizeParams(model.params(), rng, 1.0);
    const SourceSequence src = Tokens({4, 5});
    const Hypothesis greedy = GreedyDecode({&model}, src, 6);
    BeamConfig cfg;
    cfg.max_len = 6;
    cfg.width = 1;
    const std::vector<Hypothesis> one = BeamDecode({&model}, src, cfg);
    REQUIRE(one.size() == 1);
    CHECK(one.front().tokens == greedy.tokens);
    CHECK(one.front().score == greedy.score);

    double prev = -INFINITY;
    for (std::size_t w : {1u, 2u, 4u, 8u}) {
      cfg.width = w;
      double best = -INFINITY;
      for (const Hypothesis &h : BeamDecode({&model}, src, cfg)) {
        best = std::max(best, h.score);
        CHECK(h.length() <= 6);
        for (int t : h.tokens) CHECK(t != Vocabulary::kEos);
      }
      CHECK(best >= prev);
      prev = best;
    }
  }
}

TEST_CASE("ensembles") {
  std::mt19937_64 rng(3);
  Seq2SeqModel a = TextModel(6), b = TextModel(6);
  RandomizeParams(a.params(), rng, 1.0);
  const SourceSequence src = Tokens({4, 5, 4});

  const Hypothesis single = GreedyDecode({&a}, src, 8);
  const Hypothesis self = GreedyDecode({&a, &a}, src, 8);
  CHECK(self.tokens == single.tokens);
  CHECK(self.score == single.score);
  BeamConfig cfg;
  cfg.max_len = 8;
  const std::vector<Hypothesis> beam_single = BeamDecode({&a}, src, cfg);
  const std::vector<Hypothesis> beam_self = BeamDecode({&a, &a}, src, cfg);
  REQUIRE(beam_single.size() == beam_self.size());
  for (std::size_t i = 0; i < beam_single.size(); ++i) {
    CHECK(beam_single[i].tokens == beam_self[i].tokens);
    CHECK(beam_single[i].score == beam_self[i].score);
  }

  // b has zero parameters, hence uniform outputs
  EnsembleScorer mixed({&a, &b}, src), alone({&a}, src);
  EnsembleScorer::State sm = mixed.Initial(), sa = alone.Initial(), nm, na;
  for (int step = 0; step < 5; ++step) {
    const std::vector<double> pm = mixed.Step(sm, &nm), pa = alone.Step(sa, &na);
    double total = 0.0;
    for (double lp : pm) total += std::exp(lp);
    CHECK(std::fabs(total - 1.0) < 1e-9);
    for (std::size_t v = 0; v < 6; ++v)  // (p + 1/6) / 2, the hand-averaged value
      CHECK(std::fabs(std::exp(pm[v]) - (std::exp(pa[v]) + 1.0 / 6) / 2) < 1e-12);
    const int am = std::max_element(pm.begin(), pm.end()) - pm.begin();
    const int aa = std::max_element(pa.begin(), pa.end()) - pa.begin();
    CHECK(am == aa);
    sm = nm;
    sa = na;
    for (auto *s : {&sm, &sa})
      for (DecoderState &d : *s) d.prev_symbol = aa;
  }

  Seq2SeqModel other = TextModel(7);
  CHECK_THROWS_AS(GreedyDecode({&a, &other}, src, 3), ConfigError);
}

TEST_CASE("decoding is deterministic") {
  std::mt19937_64 rng(4);
  Seq2SeqModel model = SpeechModel(8);
  RandomizeParams(model.params(), rng, 0.8);
  std::normal_distribution<double> n;
  Tensor x({20, 41});
  for (double &v : x.values()) v = n(rng);
  BeamConfig cfg;
  cfg.width = 4;
  cfg.max_len = 10;
  const auto first = BeamDecode({&model}, SourceSequence{x, {}}, cfg);
  const auto second = BeamDecode({&model}, SourceSequence{x, {}}, cfg);
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].tokens == second[i].tokens);
    CHECK(first[i].score == second[i].score);
  }
}

TEST_CASE("n-best format") {
  const Vocabulary v({"a", "b"});
  std::vector<Hypothesis> nbest{{{4, 5}, -1.0, true}, {{5}, -3.0, false}};
  CHECK(FormatNBest("utt1", nbest, v, 1.0) ==
        "utt1 ||| 1 ||| -0.333333 ||| ab\nutt1 ||| 2 ||| -3.000000 ||| b\n");
}

TEST_CASE("cascade composes its parts") {
  std::mt19937_64 rng(5);
  const Vocabulary asr_vocab({"a", "b", " ", "c"});
  const BpeModel bpe = BpeModel::Learn({"ab ab ba", "abc"}, 3);
  std::vector<std::vector<std::string>> seqs{bpe.ApplyLine("ab ab ba abc c")};
  const Vocabulary mt_src = Vocabulary::BuildTokenVocab(seqs);
  const Vocabulary mt_tgt({"x", "y", "z"});
  Seq2SeqModel asr = SpeechModel(asr_vocab.size());
  Seq2SeqModel mt = TextModel(mt_tgt.size(), mt_src.size());
  RandomizeParams(asr.params(), rng, 1.0);
  RandomizeParams(mt.params(), rng, 1.0);
  // discourage early EOS so the transcript is not empty
  asr.params().Get("decoder/output/b_proj").value[Vocabulary::kEos] = -3.0;
  std::normal_distribution<double> n;
  Tensor x({24, 41});
  for (double &v : x.values()) v = n(rng);
  BeamConfig cfg;
  cfg.width = 3;
  cfg.max_len = 6;
  CascadeResources res{&asr_vocab, &bpe, &mt_src, &mt_tgt};

  const CascadeOutput out = CascadeTranslate({&asr}, {&mt}, x, res, cfg);
  const std::string transcript =
      DecodeChars(BeamDecode({&asr}, SourceSequence{x, {}}, cfg).front().tokens, asr_vocab);
  CHECK(out.transcript == transcript);
  CHECK_FALSE(transcript.empty());
  const std::vector<int> ids = EncodeTokens(bpe.ApplyLine(Normalize(transcript)), mt_src);
  CHECK(out.translation ==
        DecodeChars(BeamDecode({&mt}, Tokens(ids), cfg).front().tokens, mt_tgt));

  SUBCASE("empty transcript becomes a lone EOS") {
    Seq2SeqModel silent = SpeechModel(asr_vocab.size());
    silent.params().Get("decoder/output/b_proj").value[Vocabulary::kEos] = 5.0;
    const CascadeOutput empty = CascadeTranslate({&silent}, {&mt}, x, res, cfg);
    CHECK(empty.transcript.empty());
    CHECK(PrepareMtSource("", bpe, mt_src) == std::vector<int>{Vocabulary::kEos});
    CHECK(empty.translation ==
          DecodeChars(BeamDecode({&mt}, Tokens({Vocabulary::kEos}), cfg).front().tokens, mt_tgt));
  }
}

// src/decode/search.cc
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

#include "slt/decode/search.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "slt/base/error.h"
#include "slt/text/normalize.h"

namespace slt {

double Hypothesis::NormalizedScore(double alpha) const {
  const std::size_t n = std::max<std::size_t>(length(), 1);
  return score / std::pow(static_cast<double>(n), alpha);
}

EnsembleScorer::EnsembleScorer(const std::vector<const Seq2SeqModel *> &models,
                               const SourceSequence &source)
    : models_(models) {
  if (models_.empty()) throw ConfigError("decoding needs at least one model");
  vocab_size_ = models_[0]->config().decoder.vocab_size;
  for (const Seq2SeqModel *m : models_) {
    if (m->config().decoder.vocab_size != vocab_size_)
      throw ConfigError("ensemble members disagree on the target vocabulary size (" +
                        std::to_string(vocab_size_) + " vs " +
                        std::to_string(m->config().decoder.vocab_size) + ")");
    sources_.push_back(m->Encode(graph_, source));
    vars_.push_back(m->BindDecoder(graph_));
  }
}

EnsembleScorer::State EnsembleScorer::Initial() {
  State s;
  for (const Seq2SeqModel *m : models_) s.push_back(m->InitialState(graph_));
  return s;
}

std::vector<double> EnsembleScorer::Step(const State &state, State *next) {
  const std::size_t k = models_.size();
  next->resize(k);
  // log-softmax per member, then log of the mean probability, evaluated as
  // max + log(mean(exp(l - max))) so that identical members reproduce l exactly
  std::vector<std::vector<double>> logp(k, std::vector<double>(vocab_size_));
  for (std::size_t i = 0; i < k; ++i) {
    DecoderStepResult r = models_[i]->DecoderStep(vars_[i], state[i], sources_[i]);
    (*next)[i] = r.state;
    const Tensor &z = r.scores.value();
    const double mx = *std::max_element(z.values().begin(), z.values().end());
    double total = 0.0;
    for (double v : z.values()) total += std::exp(v - mx);
    const double lse = mx + std::log(total);
    for (std::size_t v = 0; v < vocab_size_; ++v) logp[i][v] = z[v] - lse;
  }
  if (k == 1) return logp[0];
  std::vector<double> out(vocab_size_);
  for (std::size_t v = 0; v < vocab_size_; ++v) {
    double mx = logp[0][v];
    for (std::size_t i = 1; i < k; ++i) mx = std::max(mx, logp[i][v]);
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += std::exp(logp[i][v] - mx);
    out[v] = mx + std::log(sum / static_cast<double>(k));
  }
  return out;
}

namespace {

void SetPrevious(EnsembleScorer::State *state, int symbol) {
  for (DecoderState &s : *state) s.prev_symbol = symbol;
}

}  // namespace

Hypothesis GreedyDecode(const std::vector<const Seq2SeqModel *> &models,
                        const SourceSequence &source, std::size_t max_len) {
  EnsembleScorer scorer(models, source);
  EnsembleScorer::State state = scorer.Initial(), next;
  Hypothesis h;
  for (std::size_t t = 0; t < max_len; ++t) {
    const std::vector<double> logp = scorer.Step(state, &next);
    const int best = static_cast<int>(std::max_element(logp.begin(), logp.end()) - logp.begin());
    h.score += logp[best];
    if (best == Vocabulary::kEos) {
      h.finished = true;
      break;
    }
    h.tokens.push_back(best);
    state.swap(next);
    SetPrevious(&state, best);
  }
  return h;
}

std::vector<Hypothesis> BeamDecode(const std::vector<const Seq2SeqModel *> &models,
                                   const SourceSequence &source, const BeamConfig &config) {
  if (config.width == 0) throw ConfigError("beam width must be at least 1");
  struct Live {
    Hypothesis hyp;
    EnsembleScorer::State state;
  };
  struct Candidate {
    double score;
    std::size_t parent;
    int symbol;
  };

  EnsembleScorer scorer(models, source);
  std::vector<Live> live{{Hypothesis{}, scorer.Initial()}};
  std::vector<Hypothesis> finished;
  for (std::size_t t = 0; t < config.max_len && !live.empty(); ++t) {
    std::vector<EnsembleScorer::State> successors(live.size());
    std::vector<Candidate> cands;
    cands.reserve(live.size() * scorer.vocab_size());
    for (std::size_t i = 0; i < live.size(); ++i) {
      const std::vector<double> logp = scorer.Step(live[i].state, &successors[i]);
      for (std::size_t v = 0; v < logp.size(); ++v)
        cands.push_back({live[i].hyp.score + logp[v], i, static_cast<int>(v)});
    }
    const std::size_t keep = std::min(config.width, cands.size());
    std::partial_sort(cands.begin(), cands.begin() + keep, cands.end(),
                      [](const Candidate &a, const Candidate &b) {
                        if (a.score != b.score) return a.score > b.score;
                        if (a.parent != b.parent) return a.parent < b.parent;
                        return a.symbol < b.symbol;
                      });
    std::vector<Live> next_live;
    for (std::size_t c = 0; c < keep; ++c) {
      const Candidate &cand = cands[c];
      Hypothesis h = live[cand.parent].hyp;
      h.score = cand.score;
      if (cand.symbol == Vocabulary::kEos) {
        h.finished = true;
        finished.push_back(std::move(h));
        continue;
      }
      h.tokens.push_back(cand.symbol);
      EnsembleScorer::State state = successors[cand.parent];
      SetPrevious(&state, cand.symbol);
      next_live.push_back({std::move(h), std::move(state)});
    }
    live = std::move(next_live);
  }
  for (Live &l : live) finished.push_back(std::move(l.hyp));

  const double alpha = config.length_alpha;
  std::stable_sort(finished.begin(), finished.end(),
                   [alpha](const Hypothesis &a, const Hypothesis &b) {
                     const double na = a.NormalizedScore(alpha), nb = b.NormalizedScore(alpha);
                     if (na != nb) return na > nb;
                     if (a.score != b.score) return a.score > b.score;
                     return a.tokens < b.tokens;
                   });
  return finished;
}

Hypothesis Decode(const std::vector<const Seq2SeqModel *> &models, const SourceSequence &source,
                  const BeamConfig &config) {
  if (config.width == 1) return GreedyDecode(models, source, config.max_len);
  return BeamDecode(models, source, config).front();
}

std::string FormatNBest(const std::string &id, const std::vector<Hypothesis> &nbest,
                        const Vocabulary &target_vocab, double length_alpha) {
  std::ostringstream os;
  for (std::size_t r = 0; r < nbest.size(); ++r) {
    char score[32];
    std::snprintf(score, sizeof score, "%.6f", nbest[r].NormalizedScore(length_alpha));
    os << id << " ||| " << r + 1 << " ||| " << score << " ||| "
       << DecodeChars(nbest[r].tokens, target_vocab) << '\n';
  }
  return os.str();
}

std::vector<int> PrepareMtSource(const std::string &transcript, const BpeModel &bpe,
                                 const Vocabulary &mt_source) {
  return EncodeTokens(bpe.ApplyLine(Normalize(transcript)), mt_source);
}

CascadeOutput CascadeTranslate(const std::vector<const Seq2SeqModel *> &asr,
                               const std::vector<const Seq2SeqModel *> &mt,
                               const Tensor &features, const CascadeResources &resources,
                               const BeamConfig &config) {
  if (!resources.asr_target || !resources.bpe || !resources.mt_source || !resources.mt_target)
    throw ConfigError("cascade needs ASR target, BPE, MT source and MT target resources");
  CascadeOutput out;
  const Hypothesis asr_hyp = Decode(asr, SourceSequence{features, {}}, config);
  out.transcript = DecodeChars(asr_hyp.tokens, *resources.asr_target);
  SourceSequence mt_source;
  mt_source.tokens = PrepareMtSource(out.transcript, *resources.bpe, *resources.mt_source);
  out.translation = DecodeChars(Decode(mt, mt_source, config).tokens, *resources.mt_target);
  return out;
}

}  // namespace slt

// include/slt/decode/search.h
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

#ifndef SLT_DECODE_SEARCH_H_
#define SLT_DECODE_SEARCH_H_

#include <string>
#include <vector>

#include "slt/model/seq2seq.h"
#include "slt/text/bpe.h"
#include "slt/text/vocabulary.h"

namespace slt {

struct Hypothesis {
  std::vector<int> tokens;  // emitted symbols, EOS excluded
  double score = 0.0;       // sum of per-step log-probabilities, EOS included
  bool finished = false;    // EOS was emitted

  /// Symbols scored so far: tokens plus the EOS if present.
  std::size_t length() const { return tokens.size() + (finished ? 1 : 0); }
  /// score / length^alpha.
  double NormalizedScore(double alpha) const;
};

struct BeamConfig {
  std::size_t width = 8;
  std::size_t max_len = 300;
  double length_alpha = 1.0;
};

// Per-step next-symbol distribution of one model or an ensemble of models
// with a common target vocabulary. Each model keeps its own decoder state;
// the combined distribution is the arithmetic mean of the members'
// distributions, returned as log-probabilities. A one-member ensemble is a
// plain model. Owns the inference graph for one source sequence.
class EnsembleScorer {
 public:
  using State = std::vector<DecoderState>;

  EnsembleScorer(const std::vector<const Seq2SeqModel *> &models, const SourceSequence &source);
  EnsembleScorer(const EnsembleScorer &) = delete;
  EnsembleScorer &operator=(const EnsembleScorer &) = delete;

  std::size_t vocab_size() const { return vocab_size_; }
  State Initial();
  /// Log of the averaged distribution after `state`, whose members all carry
  /// the same previous symbol. `next` receives the successor states.
  std::vector<double> Step(const State &state, State *next);

 private:
  Graph graph_{false};
  std::vector<const Seq2SeqModel *> models_;
  std::vector<EncodedSource> sources_;
  std::vector<DecoderVars> vars_;
  std::size_t vocab_size_ = 0;
};

/// Argmax at each step (lowest index on ties) until EOS or max_len symbols.
Hypothesis GreedyDecode(const std::vector<const Seq2SeqModel *> &models,
                        const SourceSequence &source, std::size_t max_len);

/// Beam search. Each step expands every live hypothesis over the vocabulary
/// and keeps the `width` best candidates by accumulated log-probability
/// (ties: earlier hypothesis, then lower symbol). Candidates ending in EOS
/// retire to the finished list. Search stops when nothing is live or after
/// max_len steps; hypotheses still live then are returned unfinished. The
/// result is sorted best first by NormalizedScore(length_alpha).
std::vector<Hypothesis> BeamDecode(const std::vector<const Seq2SeqModel *> &models,
                                   const SourceSequence &source, const BeamConfig &config);

/// Width-1 search is greedy decoding; otherwise beam search. Returns the top
/// hypothesis.
Hypothesis Decode(const std::vector<const Seq2SeqModel *> &models, const SourceSequence &source,
                  const BeamConfig &config);

/// "id ||| rank ||| score ||| text" lines, rank from 1, normalized score.
std::string FormatNBest(const std::string &id, const std::vector<Hypothesis> &nbest,
                        const Vocabulary &target_vocab, double length_alpha);

// Everything the cascade needs besides the models.
struct CascadeResources {
  const Vocabulary *asr_target = nullptr;  // source-language characters
  const BpeModel *bpe = nullptr;
  const Vocabulary *mt_source = nullptr;   // subword vocabulary of the MT encoder
  const Vocabulary *mt_target = nullptr;   // target-language characters
};

/// Normalized transcript -> BPE subwords -> MT source ids (EOS appended, so
/// an empty transcript becomes a lone EOS).
std::vector<int> PrepareMtSource(const std::string &transcript, const BpeModel &bpe,
                                 const Vocabulary &mt_source);

struct CascadeOutput {
  std::string transcript;
  std::string translation;
};

/// ASR decoding of the features, then MT decoding of the re-segmented
/// transcript, both with `config`.
CascadeOutput CascadeTranslate(const std::vector<const Seq2SeqModel *> &asr,
                               const std::vector<const Seq2SeqModel *> &mt,
                               const Tensor &features, const CascadeResources &resources,
                               const BeamConfig &config);

}  // namespace slt

#endif  // SLT_DECODE_SEARCH_H_

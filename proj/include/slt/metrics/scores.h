// include/slt/metrics/scores.h
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

#ifndef SLT_METRICS_SCORES_H_
#define SLT_METRICS_SCORES_H_

#include <array>
#include <string>
#include <vector>

#include "slt/metrics/levenshtein.h"

namespace slt {

// Both metrics normalize hypothesis and reference text first and then work
// on whitespace tokens. Empty corpora raise ConfigError.

constexpr int kBleuOrder = 4;

// Clipped n-gram statistics, additive over sentences.
struct BleuStats {
  std::array<std::size_t, kBleuOrder> matches{};
  std::array<std::size_t, kBleuOrder> totals{};
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;

  BleuStats &operator+=(const BleuStats &o);
};

struct BleuResult {
  double score = 0.0;  // 0..100
  std::array<double, kBleuOrder> precisions{};
  double brevity_penalty = 1.0;
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;
};

BleuStats ComputeBleuStats(const std::vector<std::string> &hyp,
                           const std::vector<std::string> &ref);
/// Unsmoothed: any order without a match yields 0.
BleuResult BleuFromStats(const BleuStats &stats);

/// Corpus-level BLEU over line-aligned hypotheses and single references.
BleuResult CorpusBleu(const std::vector<std::string> &hyps, const std::vector<std::string> &refs);
/// Add-one smoothed (orders 2..4) sentence BLEU, for diagnostics only.
double SentenceBleu(const std::string &hyp, const std::string &ref);

struct WerResult {
  double wer = 0.0;  // percent; may exceed 100
  EditCounts edits;
  std::size_t ref_words = 0;
};

WerResult CorpusWer(const std::vector<std::string> &hyps, const std::vector<std::string> &refs);

/// "BLEU = 57.9" and "WER = 50.0".
std::string FormatBleu(const BleuResult &r);
std::string FormatWer(const WerResult &r);
/// Tab-separated "key\tvalue" lines for the machine-readable breakdown.
std::string BleuBreakdown(const BleuResult &r);
std::string WerBreakdown(const WerResult &r);

}  // namespace slt

#endif  // SLT_METRICS_SCORES_H_

// src/metrics/scores.cc
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

#include "slt/metrics/scores.h"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "slt/base/error.h"
#include "slt/text/normalize.h"

namespace slt {

namespace {

void CheckCorpus(const std::vector<std::string> &hyps, const std::vector<std::string> &refs) {
  if (refs.empty()) throw ConfigError("cannot score an empty corpus");
  if (hyps.size() != refs.size())
    throw ConfigError("hypothesis/reference count mismatch: " + std::to_string(hyps.size()) +
                      " vs " + std::to_string(refs.size()));
}

std::vector<std::string> Tokens(const std::string &text) { return SplitWords(Normalize(text)); }

using NGramCounts = std::map<std::vector<std::string>, std::size_t>;

NGramCounts CountNGrams(const std::vector<std::string> &tokens, std::size_t n) {
  NGramCounts counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i)
    ++counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  return counts;
}

std::string OneDecimal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

}  // namespace

BleuStats &BleuStats::operator+=(const BleuStats &o) {
  for (int n = 0; n < kBleuOrder; ++n) {
    matches[n] += o.matches[n];
    totals[n] += o.totals[n];
  }
  hyp_length += o.hyp_length;
  ref_length += o.ref_length;
  return *this;
}

BleuStats ComputeBleuStats(const std::vector<std::string> &hyp,
                           const std::vector<std::string> &ref) {
  BleuStats s;
  s.hyp_length = hyp.size();
  s.ref_length = ref.size();
  for (int n = 1; n <= kBleuOrder; ++n) {
    const NGramCounts h = CountNGrams(hyp, n), r = CountNGrams(ref, n);
    for (const auto &[gram, count] : h) {
      s.totals[n - 1] += count;
      auto it = r.find(gram);
      if (it != r.end()) s.matches[n - 1] += std::min(count, it->second);
    }
  }
  return s;
}

BleuResult BleuFromStats(const BleuStats &stats) {
  BleuResult r;
  r.hyp_length = stats.hyp_length;
  r.ref_length = stats.ref_length;
  double log_sum = 0.0;
  bool zero = false;
  for (int n = 0; n < kBleuOrder; ++n) {
    r.precisions[n] =
        stats.totals[n] == 0 ? 0.0 : static_cast<double>(stats.matches[n]) / stats.totals[n];
    if (stats.matches[n] == 0) zero = true;
    else log_sum += std::log(r.precisions[n]);
  }
  if (stats.hyp_length == 0) r.brevity_penalty = 0.0;
  else if (stats.hyp_length < stats.ref_length)
    r.brevity_penalty = std::exp(1.0 - static_cast<double>(stats.ref_length) / stats.hyp_length);
  r.score = zero ? 0.0 : 100.0 * r.brevity_penalty * std::exp(log_sum / kBleuOrder);
  return r;
}

BleuResult CorpusBleu(const std::vector<std::string> &hyps, const std::vector<std::string> &refs) {
  CheckCorpus(hyps, refs);
  BleuStats total;
  for (std::size_t i = 0; i < hyps.size(); ++i) total += ComputeBleuStats(Tokens(hyps[i]), Tokens(refs[i]));
  return BleuFromStats(total);
}

double SentenceBleu(const std::string &hyp, const std::string &ref) {
  const BleuStats s = ComputeBleuStats(Tokens(hyp), Tokens(ref));
  if (s.hyp_length == 0 || s.matches[0] == 0) return 0.0;
  double log_sum = std::log(static_cast<double>(s.matches[0]) / s.totals[0]);
  for (int n = 1; n < kBleuOrder; ++n)
    log_sum += std::log((s.matches[n] + 1.0) / (s.totals[n] + 1.0));
  const double bp =
      s.hyp_length < s.ref_length ? std::exp(1.0 - static_cast<double>(s.ref_length) / s.hyp_length)
                                  : 1.0;
  return 100.0 * bp * std::exp(log_sum / kBleuOrder);
}

WerResult CorpusWer(const std::vector<std::string> &hyps, const std::vector<std::string> &refs) {
  CheckCorpus(hyps, refs);
  WerResult r;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    const std::vector<std::string> ref = Tokens(refs[i]);
    r.edits += Levenshtein(ref, Tokens(hyps[i]));
    r.ref_words += ref.size();
  }
  if (r.ref_words == 0) throw ConfigError("reference corpus contains no words");
  r.wer = 100.0 * static_cast<double>(r.edits.distance()) / r.ref_words;
  return r;
}

std::string FormatBleu(const BleuResult &r) { return "BLEU = " + OneDecimal(r.score); }
std::string FormatWer(const WerResult &r) { return "WER = " + OneDecimal(r.wer); }

std::string BleuBreakdown(const BleuResult &r) {
  std::ostringstream os;
  os.precision(6);
  os << "bleu\t" << r.score << '\n';
  for (int n = 0; n < kBleuOrder; ++n) os << "precision" << n + 1 << '\t' << r.precisions[n] << '\n';
  os << "brevity_penalty\t" << r.brevity_penalty << '\n'
     << "hyp_length\t" << r.hyp_length << '\n'
     << "ref_length\t" << r.ref_length << '\n';
  return os.str();
}

std::string WerBreakdown(const WerResult &r) {
  std::ostringstream os;
  os.precision(6);
  os << "wer\t" << r.wer << '\n'
     << "substitutions\t" << r.edits.substitutions << '\n'
     << "insertions\t" << r.edits.insertions << '\n'
     << "deletions\t" << r.edits.deletions << '\n'
     << "ref_words\t" << r.ref_words << '\n';
  return os.str();
}

}  // namespace slt

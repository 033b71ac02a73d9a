// include/slt/text/bpe.h
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

#ifndef SLT_TEXT_BPE_H_
#define SLT_TEXT_BPE_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace slt {

// Byte-pair-encoding subword model over code points. The last symbol of
// every word carries the end-of-word marker "</w>", which makes segmentation
// reversible.
class BpeModel {
 public:
  using Merge = std::pair<std::string, std::string>;
  static constexpr const char *kEndOfWord = "</w>";

  BpeModel() = default;
  explicit BpeModel(std::vector<Merge> merges);

  /// Greedy most-frequent-pair merging over the whitespace-separated words
  /// of `lines`. Ties go to the lexicographically smallest pair. Stops after
  /// `max_merges` merges or when no pair occurs at least twice.
  static BpeModel Learn(const std::vector<std::string> &lines, std::size_t max_merges);

  /// Segments one word, applying merges in learned order. Unseen characters
  /// pass through as single symbols.
  std::vector<std::string> Apply(const std::string &word) const;
  /// Segments every word of a line; subwords of all words in sequence.
  std::vector<std::string> ApplyLine(const std::string &line) const;

  const std::vector<Merge> &merges() const { return merges_; }

  /// "left right" per line, in merge order.
  void Save(const std::string &path) const;
  static BpeModel Load(const std::string &path);

 private:
  std::vector<Merge> merges_;
  std::map<Merge, std::size_t> rank_;
};

/// Inverse of ApplyLine: concatenates subwords, splitting words at "</w>".
std::string JoinSubwords(const std::vector<std::string> &subwords);

}  // namespace slt

#endif  // SLT_TEXT_BPE_H_

// include/slt/text/vocabulary.h
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

#ifndef SLT_TEXT_VOCABULARY_H_
#define SLT_TEXT_VOCABULARY_H_

#include <string>
#include <unordered_map>
#include <vector>

namespace slt {

// Symbol <-> id bijection with four reserved entries at fixed ids.
// Immutable once built; safe to share between threads.
class Vocabulary {
 public:
  static constexpr int kPad = 0;
  static constexpr int kBos = 1;
  static constexpr int kEos = 2;
  static constexpr int kUnk = 3;
  static constexpr int kNumReserved = 4;
  static const std::vector<std::string> &ReservedSymbols();

  /// Reserved symbols only.
  Vocabulary();
  /// Reserved symbols followed by `symbols` (which must not repeat or clash).
  explicit Vocabulary(const std::vector<std::string> &symbols);

  /// Every code point of the corpus (spaces included), ordered by
  /// descending frequency then ascending code point. Throws on an empty corpus.
  static Vocabulary BuildCharVocab(const std::vector<std::string> &lines);
  /// Whitespace-free tokens, same ordering rule.
  static Vocabulary BuildTokenVocab(const std::vector<std::vector<std::string>> &sequences);

  /// kUnk for unknown symbols.
  int Id(const std::string &symbol) const;
  bool Contains(const std::string &symbol) const { return index_.count(symbol) != 0; }
  const std::string &Symbol(int id) const;
  std::size_t size() const { return symbols_.size(); }
  static bool IsReserved(int id) { return id >= 0 && id < kNumReserved; }

  /// One symbol per line; line number is the id.
  void Save(const std::string &path) const;
  static Vocabulary Load(const std::string &path);

  bool operator==(const Vocabulary &other) const { return symbols_ == other.symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, int> index_;
};

/// Code points of `text` mapped to ids, followed by EOS.
std::vector<int> EncodeChars(const std::string &text, const Vocabulary &vocab);
/// Concatenated symbols with reserved ids removed.
std::string DecodeChars(const std::vector<int> &ids, const Vocabulary &vocab);

/// Tokens mapped to ids, followed by EOS.
std::vector<int> EncodeTokens(const std::vector<std::string> &tokens, const Vocabulary &vocab);
std::vector<std::string> DecodeTokens(const std::vector<int> &ids, const Vocabulary &vocab);

}  // namespace slt

#endif  // SLT_TEXT_VOCABULARY_H_

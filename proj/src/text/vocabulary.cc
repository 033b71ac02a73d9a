// src/text/vocabulary.cc
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

#include "slt/text/vocabulary.h"

#include <algorithm>
#include <fstream>
#include <map>

#include "slt/base/error.h"
#include "slt/text/normalize.h"

namespace slt {

namespace {

Vocabulary FromCounts(const std::map<std::string, std::size_t> &counts) {
  std::vector<std::pair<std::string, std::size_t>> items(counts.begin(), counts.end());
  // map order is already ascending by symbol, so a stable sort on count keeps it
  std::stable_sort(items.begin(), items.end(),
                   [](const auto &a, const auto &b) { return a.second > b.second; });
  std::vector<std::string> symbols;
  for (auto &kv : items) symbols.push_back(kv.first);
  return Vocabulary(symbols);
}

}  // namespace

const std::vector<std::string> &Vocabulary::ReservedSymbols() {
  static const std::vector<std::string> reserved = {"<pad>", "<s>", "</s>", "<unk>"};
  return reserved;
}

Vocabulary::Vocabulary() : Vocabulary(std::vector<std::string>{}) {}

Vocabulary::Vocabulary(const std::vector<std::string> &symbols) {
  symbols_ = ReservedSymbols();
  symbols_.insert(symbols_.end(), symbols.begin(), symbols.end());
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].empty()) throw FormatError("empty vocabulary symbol at id " + std::to_string(i));
    if (!index_.emplace(symbols_[i], static_cast<int>(i)).second)
      throw FormatError("duplicate vocabulary symbol '" + symbols_[i] + "'");
  }
}

Vocabulary Vocabulary::BuildCharVocab(const std::vector<std::string> &lines) {
  std::map<std::string, std::size_t> counts;
  for (const std::string &line : lines)
    for (const std::string &ch : SplitUtf8(line)) ++counts[ch];
  if (counts.empty()) throw Error("cannot build a character vocabulary from an empty corpus");
  return FromCounts(counts);
}

Vocabulary Vocabulary::BuildTokenVocab(const std::vector<std::vector<std::string>> &sequences) {
  std::map<std::string, std::size_t> counts;
  for (const auto &seq : sequences)
    for (const std::string &tok : seq) ++counts[tok];
  if (counts.empty()) throw Error("cannot build a token vocabulary from an empty corpus");
  return FromCounts(counts);
}

int Vocabulary::Id(const std::string &symbol) const {
  auto it = index_.find(symbol);
  return it == index_.end() ? kUnk : it->second;
}

const std::string &Vocabulary::Symbol(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= symbols_.size())
    throw Error("vocabulary id " + std::to_string(id) + " out of range");
  return symbols_[id];
}

void Vocabulary::Save(const std::string &path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError(path + ": cannot open for writing");
  for (const std::string &s : symbols_) os << s << '\n';
  if (!os) throw FormatError(path + ": write failed");
}

Vocabulary Vocabulary::Load(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError(path + ": cannot open");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(is, line)) lines.push_back(line);
  const auto &reserved = ReservedSymbols();
  if (lines.size() < reserved.size() || !std::equal(reserved.begin(), reserved.end(), lines.begin()))
    throw FormatError(path + ": vocabulary must start with the reserved symbols");
  return Vocabulary(std::vector<std::string>(lines.begin() + reserved.size(), lines.end()));
}

std::vector<int> EncodeChars(const std::string &text, const Vocabulary &vocab) {
  std::vector<int> ids;
  for (const std::string &ch : SplitUtf8(text)) ids.push_back(vocab.Id(ch));
  ids.push_back(Vocabulary::kEos);
  return ids;
}

std::string DecodeChars(const std::vector<int> &ids, const Vocabulary &vocab) {
  std::string out;
  for (int id : ids)
    if (!Vocabulary::IsReserved(id)) out += vocab.Symbol(id);
  return out;
}

std::vector<int> EncodeTokens(const std::vector<std::string> &tokens, const Vocabulary &vocab) {
  std::vector<int> ids;
  for (const std::string &t : tokens) ids.push_back(vocab.Id(t));
  ids.push_back(Vocabulary::kEos);
  return ids;
}

std::vector<std::string> DecodeTokens(const std::vector<int> &ids, const Vocabulary &vocab) {
  std::vector<std::string> out;
  for (int id : ids)
    if (!Vocabulary::IsReserved(id)) out.push_back(vocab.Symbol(id));
  return out;
}

}  // namespace slt

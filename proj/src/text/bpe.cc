// src/text/bpe.cc
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

#include "slt/text/bpe.h"

#include <fstream>
#include <limits>
#include <set>

#include "slt/base/error.h"
#include "slt/text/normalize.h"

namespace slt {

namespace {

std::vector<std::string> InitialSymbols(const std::string &word) {
  std::vector<std::string> syms = SplitUtf8(word);
  if (!syms.empty()) syms.back() += BpeModel::kEndOfWord;
  return syms;
}

// Pair frequencies, kept sorted by (count desc, pair asc) so the next merge
// is always ranked_.begin().
class PairStats {
 public:
  void Adjust(const BpeModel::Merge &pair, long long delta, std::size_t word) {
    long long &count = counts_[pair];
    if (count > 0) ranked_.erase({count, pair});
    count += delta;
    if (count > 0) ranked_.insert({count, pair});
    else counts_.erase(pair);
    if (delta > 0) where_[pair].insert(word);
  }

  bool empty() const { return ranked_.empty(); }
  const std::pair<long long, BpeModel::Merge> &Best() const { return *ranked_.begin(); }
  std::set<std::size_t> WordsWith(const BpeModel::Merge &pair) const {
    auto it = where_.find(pair);
    return it == where_.end() ? std::set<std::size_t>{} : it->second;
  }

 private:
  struct Order {
    bool operator()(const std::pair<long long, BpeModel::Merge> &a,
                    const std::pair<long long, BpeModel::Merge> &b) const {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    }
  };
  std::map<BpeModel::Merge, long long> counts_;
  std::set<std::pair<long long, BpeModel::Merge>, Order> ranked_;
  std::map<BpeModel::Merge, std::set<std::size_t>> where_;  // may hold stale entries
};

// Replaces every non-overlapping occurrence of `pair`, left to right.
void MergeInPlace(std::vector<std::string> *syms, const BpeModel::Merge &pair) {
  std::vector<std::string> out;
  out.reserve(syms->size());
  for (std::size_t i = 0; i < syms->size(); ++i) {
    if (i + 1 < syms->size() && (*syms)[i] == pair.first && (*syms)[i + 1] == pair.second) {
      out.push_back(pair.first + pair.second);
      ++i;
    } else {
      out.push_back((*syms)[i]);
    }
  }
  *syms = std::move(out);
}

}  // namespace

BpeModel::BpeModel(std::vector<Merge> merges) : merges_(std::move(merges)) {
  for (std::size_t i = 0; i < merges_.size(); ++i) rank_.emplace(merges_[i], i);
}

BpeModel BpeModel::Learn(const std::vector<std::string> &lines, std::size_t max_merges) {
  std::map<std::string, long long> word_counts;
  for (const std::string &line : lines)
    for (const std::string &w : SplitWords(line)) ++word_counts[w];

  std::vector<std::vector<std::string>> words;
  std::vector<long long> freq;
  for (const auto &kv : word_counts) {
    words.push_back(InitialSymbols(kv.first));
    freq.push_back(kv.second);
  }

  PairStats stats;
  for (std::size_t w = 0; w < words.size(); ++w)
    for (std::size_t i = 0; i + 1 < words[w].size(); ++i)
      stats.Adjust({words[w][i], words[w][i + 1]}, freq[w], w);

  std::vector<Merge> merges;
  while (merges.size() < max_merges && !stats.empty() && stats.Best().first >= 2) {
    const Merge best = stats.Best().second;
    merges.push_back(best);
    for (std::size_t w : stats.WordsWith(best)) {
      std::vector<std::string> &syms = words[w];
      for (std::size_t i = 0; i + 1 < syms.size(); ++i)
        stats.Adjust({syms[i], syms[i + 1]}, -freq[w], w);
      MergeInPlace(&syms, best);
      for (std::size_t i = 0; i + 1 < syms.size(); ++i)
        stats.Adjust({syms[i], syms[i + 1]}, freq[w], w);
    }
  }
  return BpeModel(std::move(merges));
}

std::vector<std::string> BpeModel::Apply(const std::string &word) const {
  std::vector<std::string> syms = InitialSymbols(word);
  while (syms.size() > 1) {
    std::size_t best_rank = std::numeric_limits<std::size_t>::max();
    const Merge *best = nullptr;
    for (std::size_t i = 0; i + 1 < syms.size(); ++i) {
      auto it = rank_.find({syms[i], syms[i + 1]});
      if (it != rank_.end() && it->second < best_rank) {
        best_rank = it->second;
        best = &it->first;
      }
    }
    if (best == nullptr) break;
    MergeInPlace(&syms, *best);
  }
  return syms;
}

std::vector<std::string> BpeModel::ApplyLine(const std::string &line) const {
  std::vector<std::string> out;
  for (const std::string &w : SplitWords(line)) {
    std::vector<std::string> sub = Apply(w);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

void BpeModel::Save(const std::string &path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError(path + ": cannot open for writing");
  for (const Merge &m : merges_) os << m.first << ' ' << m.second << '\n';
  if (!os) throw FormatError(path + ": write failed");
}

BpeModel BpeModel::Load(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError(path + ": cannot open");
  std::vector<Merge> merges;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::vector<std::string> parts = SplitWords(line);
    if (parts.size() != 2)
      throw FormatError(path + ":" + std::to_string(lineno) + ": expected 'left right'");
    merges.emplace_back(parts[0], parts[1]);
  }
  return BpeModel(std::move(merges));
}

std::string JoinSubwords(const std::vector<std::string> &subwords) {
  const std::string marker = BpeModel::kEndOfWord;
  std::vector<std::string> words;
  std::string cur;
  for (const std::string &s : subwords) {
    if (s.size() >= marker.size() &&
        s.compare(s.size() - marker.size(), marker.size(), marker) == 0) {
      cur += s.substr(0, s.size() - marker.size());
      words.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += s;
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  return JoinWords(words);
}

}  // namespace slt

// src/harness/corpus.cc
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

#include "slt/harness/corpus.h"

#include <fstream>

#include "slt/base/error.h"
#include "slt/decode/search.h"
#include "slt/text/normalize.h"

namespace slt {

std::vector<std::string> ReadLines(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw ConfigError(path + ": cannot open");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

void WriteLines(const std::string &path, const std::vector<std::string> &lines) {
  std::ofstream os(path);
  for (const std::string &l : lines) os << l << '\n';
  if (!os) throw ConfigError(path + ": cannot write");
}

std::vector<CorpusPair> LoadCorpus(const std::string &source_path,
                                   const std::vector<std::string> &target_paths) {
  if (target_paths.empty()) throw ConfigError("no target file given for " + source_path);
  const std::vector<std::string> sources = ReadLines(source_path);
  std::vector<CorpusPair> corpus;
  for (std::size_t r = 0; r < target_paths.size(); ++r) {
    const std::vector<std::string> targets = ReadLines(target_paths[r]);
    if (targets.size() != sources.size())
      throw ConfigError(target_paths[r] + " has " + std::to_string(targets.size()) + " lines but " +
                        source_path + " has " + std::to_string(sources.size()));
    for (std::size_t i = 0; i < sources.size(); ++i) {
      std::string id = std::to_string(i + 1);
      if (target_paths.size() > 1) id += "/" + std::to_string(r + 1);
      corpus.push_back({id, sources[i], targets[i]});
    }
  }
  return corpus;
}

Vocabulary TargetVocabulary(const std::vector<CorpusPair> &corpus) {
  std::vector<std::string> lines;
  for (const CorpusPair &p : corpus) lines.push_back(Normalize(p.target));
  return Vocabulary::BuildCharVocab(lines);
}

BpeModel LearnSourceBpe(const std::vector<CorpusPair> &corpus, std::size_t merges) {
  std::vector<std::string> lines;
  for (const CorpusPair &p : corpus) lines.push_back(Normalize(p.source));
  return BpeModel::Learn(lines, merges);
}

Vocabulary SourceVocabulary(const std::vector<CorpusPair> &corpus, const BpeModel &bpe) {
  std::vector<std::vector<std::string>> segmented;
  for (const CorpusPair &p : corpus) segmented.push_back(bpe.ApplyLine(Normalize(p.source)));
  return Vocabulary::BuildTokenVocab(segmented);
}

std::vector<Example> SpeechExamples(const std::vector<CorpusPair> &corpus,
                                    const std::map<std::string, FeatureMatrix> &features,
                                    const Vocabulary &target_vocab) {
  std::vector<Example> out;
  for (const CorpusPair &p : corpus) {
    const auto it = features.find(p.source);
    if (it == features.end()) throw ConfigError("utterance '" + p.source + "' is not in the feature cache");
    Example e;
    e.id = p.source;
    e.source.features = it->second.frames;
    e.target = EncodeChars(Normalize(p.target), target_vocab);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<Example> TextExamples(const std::vector<CorpusPair> &corpus, const BpeModel &bpe,
                                  const Vocabulary &source_vocab, const Vocabulary &target_vocab) {
  std::vector<Example> out;
  for (const CorpusPair &p : corpus) {
    Example e;
    e.id = p.id;
    e.source.tokens = PrepareMtSource(p.source, bpe, source_vocab);
    e.target = EncodeChars(Normalize(p.target), target_vocab);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace slt

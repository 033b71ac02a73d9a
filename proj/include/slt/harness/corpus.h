// include/slt/harness/corpus.h
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

#ifndef SLT_HARNESS_CORPUS_H_
#define SLT_HARNESS_CORPUS_H_

#include <map>
#include <string>
#include <vector>

#include "slt/audio/mfcc.h"
#include "slt/text/bpe.h"
#include "slt/text/vocabulary.h"
#include "slt/train/trainer.h"

namespace slt {

/// Lines of a UTF-8 text file without their terminators. Throws ConfigError
/// when the file cannot be opened.
std::vector<std::string> ReadLines(const std::string &path);
void WriteLines(const std::string &path, const std::vector<std::string> &lines);

struct CorpusPair {
  std::string id;      // unique within the corpus
  std::string source;  // utterance id (speech) or source sentence (text)
  std::string target;
};

/// Pairs every source line with the same line of each target file. With k
/// target files the sources appear k times: all pairs of the first file,
/// then all of the second, and so on. Throws ConfigError when a target file
/// and the source file have different line counts.
std::vector<CorpusPair> LoadCorpus(const std::string &source_path,
                                   const std::vector<std::string> &target_paths);

/// Character vocabulary of the normalized targets.
Vocabulary TargetVocabulary(const std::vector<CorpusPair> &corpus);

/// BPE learned on the normalized sources, and the subword vocabulary it yields.
BpeModel LearnSourceBpe(const std::vector<CorpusPair> &corpus, std::size_t merges);
Vocabulary SourceVocabulary(const std::vector<CorpusPair> &corpus, const BpeModel &bpe);

/// Targets become normalized character ids followed by EOS.
std::vector<Example> SpeechExamples(const std::vector<CorpusPair> &corpus,
                                    const std::map<std::string, FeatureMatrix> &features,
                                    const Vocabulary &target_vocab);
std::vector<Example> TextExamples(const std::vector<CorpusPair> &corpus, const BpeModel &bpe,
                                  const Vocabulary &source_vocab, const Vocabulary &target_vocab);

}  // namespace slt

#endif  // SLT_HARNESS_CORPUS_H_

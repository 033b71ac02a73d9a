// include/slt/harness/toy-corpus.h
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

#ifndef SLT_HARNESS_TOY_CORPUS_H_
#define SLT_HARNESS_TOY_CORPUS_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "slt/audio/wav.h"

namespace slt {

// A small synthetic speech translation corpus. Source sentences follow the
// pattern "the <adjective> <noun> <verb> <adverb>" over a fixed English
// lexicon; translations come from a word dictionary with the adjective moved
// after the noun ("the red cat runs fast" -> "el gato rojo corre rapido").
// The "speech" encodes each letter as a pure tone of a letter-specific pitch
// and each space as a pause.
struct ToyCorpusOptions {
  std::size_t train = 50;
  std::size_t dev = 10;
  std::size_t test = 10;
  std::uint64_t seed = 1;
  double letter_ms = 60.0;
  double jitter = 0.1;         // relative spread of letter durations
  double noise = 0.01;         // amplitude of the background noise
  double pitch_spread = 0.0;   // per-utterance relative shift of every tone
  int sample_rate = 16000;
};

struct ToySentence {
  std::string transcript;
  std::string translation;
};

/// Number of distinct sentences the grammar can produce.
std::size_t ToyGrammarSize();

/// `count` distinct sentences in a seeded random order. Throws ConfigError
/// when more sentences are requested than the grammar has.
std::vector<ToySentence> SampleToySentences(std::size_t count, std::uint64_t seed);

/// Tone frequency used for a letter; 0 for the pause.
double ToyLetterFrequency(char letter);

PcmSignal SynthesizeToySpeech(const std::string &transcript, const ToyCorpusOptions &options,
                              std::mt19937_64 *rng);

// Layout written by MakeToyCorpus under `dir`:
//   wav/<id>.wav, features.sltf,
//   {train,dev,test}.ids / .en (transcripts) / .es (translations),
//   toy.conf (an experiment config pointing at these files).
struct ToyCorpusFiles {
  std::string dir;
  std::string features;
  std::string config;
};

ToyCorpusFiles MakeToyCorpus(const std::string &dir, const ToyCorpusOptions &options);

}  // namespace slt

#endif  // SLT_HARNESS_TOY_CORPUS_H_

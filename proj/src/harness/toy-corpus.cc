// src/harness/toy-corpus.cc
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

#include "slt/harness/toy-corpus.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "slt/audio/feature-cache.h"
#include "slt/audio/mfcc.h"
#include "slt/base/error.h"
#include "slt/harness/config.h"
#include "slt/harness/corpus.h"

namespace slt {

namespace {

struct Entry {
  const char *en;
  const char *es;
};

constexpr Entry kAdjectives[] = {{"red", "rojo"}, {"big", "gran"},  {"old", "viejo"},
                                 {"new", "nuevo"}, {"sad", "triste"}, {"shy", "timido"}};
constexpr Entry kNouns[] = {{"cat", "gato"}, {"dog", "perro"}, {"fox", "zorro"}, {"owl", "buho"},
                            {"cow", "vaca"}, {"bee", "abeja"}, {"pig", "cerdo"}, {"elk", "alce"}};
constexpr Entry kVerbs[] = {{"runs", "corre"}, {"eats", "come"}, {"sings", "canta"},
                            {"sleeps", "duerme"}, {"swims", "nada"}};

constexpr Entry kAdverbs[] = {{"now", "ahora"}, {"here", "aqui"}, {"well", "bien"}, {"fast", "rapido"}};

constexpr std::size_t kNumAdjectives = std::size(kAdjectives);
constexpr std::size_t kNumNouns = std::size(kNouns);
constexpr std::size_t kNumVerbs = std::size(kVerbs);
constexpr std::size_t kNumAdverbs = std::size(kAdverbs);

ToySentence Sentence(std::size_t index) {
  const Entry &a = kAdjectives[index % kNumAdjectives];
  const Entry &n = kNouns[(index / kNumAdjectives) % kNumNouns];
  const Entry &v = kVerbs[(index / (kNumAdjectives * kNumNouns)) % kNumVerbs];
  const Entry &d = kAdverbs[index / (kNumAdjectives * kNumNouns * kNumVerbs)];
  return {std::string("the ") + a.en + " " + n.en + " " + v.en + " " + d.en,
          std::string("el ") + n.es + " " + a.es + " " + v.es + " " + d.es};
}

}  // namespace

std::size_t ToyGrammarSize() { return kNumAdjectives * kNumNouns * kNumVerbs * kNumAdverbs; }

std::vector<ToySentence> SampleToySentences(std::size_t count, std::uint64_t seed) {
  if (count > ToyGrammarSize())
    throw ConfigError("the toy grammar has only " + std::to_string(ToyGrammarSize()) +
                      " sentences, " + std::to_string(count) + " requested");
  std::vector<std::size_t> order(ToyGrammarSize());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<ToySentence> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(Sentence(order[i]));
  return out;
}

double ToyLetterFrequency(char letter) {
  if (letter < 'a' || letter > 'z') return 0.0;
  // Letters are spread evenly on the mel scale between 250 Hz and 5 kHz so
  // that neighbouring letters fall into different filterbank channels.
  const double lo = HzToMel(250.0), hi = HzToMel(5000.0);
  return MelToHz(lo + (hi - lo) * (letter - 'a') / 25.0);
}

PcmSignal SynthesizeToySpeech(const std::string &transcript, const ToyCorpusOptions &options,
                              std::mt19937_64 *rng) {
  std::uniform_real_distribution<double> jitter(1.0 - options.jitter, 1.0 + options.jitter);
  std::uniform_real_distribution<double> gain(0.3, 0.6);
  std::normal_distribution<double> noise(0.0, options.noise);
  PcmSignal signal;
  signal.sample_rate = options.sample_rate;
  const double amplitude = gain(*rng);
  const double pitch =
      std::uniform_real_distribution<double>(1.0 - options.pitch_spread, 1.0 + options.pitch_spread)(*rng);
  for (char ch : transcript) {
    const std::size_t n = static_cast<std::size_t>(
        std::lround(options.letter_ms * jitter(*rng) * options.sample_rate / 1000.0));
    const double f = pitch * ToyLetterFrequency(ch);
    for (std::size_t i = 0; i < n; ++i) {
      // Short raised-cosine ramps avoid clicks at letter boundaries.
      const double ramp = std::min({1.0, i / 80.0, (n - 1 - i) / 80.0});
      const double tone =
          f > 0.0 ? amplitude * ramp * std::sin(2.0 * std::numbers::pi * f * i / options.sample_rate)
                  : 0.0;
      signal.samples.push_back(std::clamp(tone + noise(*rng), -1.0, 1.0));
    }
  }
  return signal;
}

ToyCorpusFiles MakeToyCorpus(const std::string &dir, const ToyCorpusOptions &options) {
  namespace fs = std::filesystem;
  const std::vector<ToySentence> sentences =
      SampleToySentences(options.train + options.dev + options.test, options.seed);
  fs::create_directories(fs::path(dir) / "wav");
  std::mt19937_64 rng(options.seed ^ 0x5eedULL);
  const MfccConfig mfcc;
  std::vector<FeatureMatrix> features;

  std::size_t next = 0;
  const std::pair<const char *, std::size_t> splits[] = {
      {"train", options.train}, {"dev", options.dev}, {"test", options.test}};
  for (const auto &[split, count] : splits) {
    std::vector<std::string> ids, en, es;
    for (std::size_t i = 0; i < count; ++i, ++next) {
      char id[32];
      std::snprintf(id, sizeof id, "%s-%04zu", split, i);
      const fs::path wav = fs::path(dir) / "wav" / (std::string(id) + ".wav");
      WriteWav(wav.string(), SynthesizeToySpeech(sentences[next].transcript, options, &rng));
      FeatureMatrix f = ExtractFeatures(wav.string(), mfcc);
      f.id = id;
      features.push_back(std::move(f));
      ids.push_back(id);
      en.push_back(sentences[next].transcript);
      es.push_back(sentences[next].translation);
    }
    WriteLines((fs::path(dir) / (std::string(split) + ".ids")).string(), ids);
    WriteLines((fs::path(dir) / (std::string(split) + ".en")).string(), en);
    WriteLines((fs::path(dir) / (std::string(split) + ".es")).string(), es);
  }

  ToyCorpusFiles files;
  files.dir = dir;
  files.features = (fs::path(dir) / "features.sltf").string();
  WriteFeatureCache(files.features, features);

  // A small model that trains in minutes on one CPU core.
  ExperimentConfig c;
  c.out_dir = (fs::path(dir) / "run").string();
  c.seed = options.seed;
  c.features = files.features;
  c.train_ids = (fs::path(dir) / "train.ids").string();
  c.dev_ids = (fs::path(dir) / "dev.ids").string();
  c.train_transcripts = (fs::path(dir) / "train.en").string();
  c.dev_transcripts = (fs::path(dir) / "dev.en").string();
  c.train_translations = {(fs::path(dir) / "train.es").string()};
  c.dev_translations = (fs::path(dir) / "dev.es").string();
  c.speech_input1 = 32;
  c.speech_input2 = 16;
  c.conv_filters = 4;
  c.encoder_layers = 1;
  c.encoder_cell = 32;
  c.text_embedding = 16;
  c.text_cell = 32;
  c.decoder_cell = 32;
  c.target_embedding = 16;
  c.output_layer = 32;
  c.attention = 32;
  c.bpe_merges = 20;
  c.updates = 2000;
  c.pretrain_updates = 1000;
  c.batch_size = 8;
  c.dropout = 0.0;
  c.symbol_dropout = 0.0;
  c.eval_interval = 250;
  c.dev_max_len = 40;
  files.config = (fs::path(dir) / "toy.conf").string();
  c.Save(files.config);
  return files;
}

}  // namespace slt

// include/slt/harness/config.h
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

#ifndef SLT_HARNESS_CONFIG_H_
#define SLT_HARNESS_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "slt/model/config.h"
#include "slt/train/schedule.h"
#include "slt/train/trainer.h"

namespace slt {

enum class Regime { kEnd2End, kPretrained, kMultitask, kCascaded };

std::string RegimeName(Regime regime);
Regime ParseRegime(const std::string &name);

// Everything a training run needs. Stored as flat "key = value" lines;
// "#" starts a comment. Lists (several reference files) are comma separated.
struct ExperimentConfig {
  Task task = Task::kAst;
  Regime regime = Regime::kEnd2End;
  std::uint64_t seed = 1;
  std::string out_dir = "run";

  // Corpus. Speech sources are utterance ids resolved in `features`; text
  // sources are the transcript lines.
  std::string features;
  std::string train_ids, dev_ids;
  std::string train_transcripts, dev_transcripts;
  std::vector<std::string> train_translations;  // one file per reference
  std::string dev_translations;

  // Architecture.
  std::size_t speech_input1 = 256;
  std::size_t speech_input2 = 128;
  std::size_t conv_filters = 16;
  std::size_t encoder_layers = 3;
  std::size_t encoder_cell = 256;
  std::size_t text_embedding = 256;
  std::size_t text_cell = 256;
  std::size_t decoder_cell = 512;
  std::size_t target_embedding = 128;
  std::size_t output_layer = 512;
  std::size_t attention = 512;
  std::size_t bpe_merges = 1000;

  // Optimisation.
  std::size_t updates = 10000;           // updates of the main task
  std::size_t pretrain_updates = 10000;  // ASR and MT updates before transfer
  std::size_t batch_size = 32;
  double learning_rate = 0.001;
  double dropout = 0.2;
  double symbol_dropout = 0.2;
  std::size_t max_source_frames = 1400;
  std::size_t max_target_chars = 300;
  std::size_t eval_interval = 1000;
  std::size_t dev_max_len = 300;
  std::size_t patience = 0;  // evaluations without improvement before stopping; 0 = never

  /// Applies one "key = value" assignment. Throws ConfigError for unknown
  /// keys or malformed values.
  void Set(const std::string &key, const std::string &value);
  std::string Get(const std::string &key) const;
  static const std::vector<std::string> &Keys();
  /// One-line description of a key, including its default.
  static std::string Describe(const std::string &key);

  /// Every key in a fixed order; Parse(Serialize()) reproduces the config.
  std::string Serialize() const;
  static ExperimentConfig Parse(const std::string &text);
  static ExperimentConfig Load(const std::string &path);
  void Save(const std::string &path) const;

  /// Range and consistency checks; with `check_paths`, also that the corpus
  /// files the task needs exist.
  void Validate(bool check_paths) const;

  ModelConfig ModelFor(Task task, std::size_t target_vocab, std::size_t source_vocab) const;
  TrainConfig Training() const;
};

}  // namespace slt

#endif  // SLT_HARNESS_CONFIG_H_

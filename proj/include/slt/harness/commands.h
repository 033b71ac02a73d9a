// include/slt/harness/commands.h
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

#ifndef SLT_HARNESS_COMMANDS_H_
#define SLT_HARNESS_COMMANDS_H_

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "slt/harness/config.h"
#include "slt/harness/toy-corpus.h"
#include "slt/train/trainer.h"

namespace slt {

// Every command returns a process exit code: kExitOk, kExitUsage for bad
// arguments, configs, inputs and I/O, kExitNumeric for non-finite values.
// Errors are reported on `err` as one "error: ..." line.
int RunGuarded(std::ostream &err, const std::function<int()> &body);

// Files written by training into a model directory.
inline constexpr const char *kTargetVocabFile = "target.vocab";
inline constexpr const char *kSourceVocabFile = "source.vocab";
inline constexpr const char *kBpeFile = "bpe.codes";
inline constexpr const char *kLogFile = "train.log";
inline constexpr const char *kConfigFile = "config.txt";

struct TrainSummary {
  std::string model_dir;  // directory of the main model's checkpoints
  std::vector<EvalRecord> evals;
  std::size_t best_step = 0;
  std::size_t updates = 0;
};

/// Runs the configured regime:
///   end2end     one model for `task` in out_dir;
///   pretrained  ASR in out_dir/asr and MT in out_dir/mt, then an AST model
///               initialised from their best checkpoints in out_dir;
///   multitask   as pretrained, then `updates` updates alternating
///               AST/ASR/MT 3:1:1 with the encoder and decoder shared;
///   cascaded    ASR in out_dir/asr and MT in out_dir/mt only.
/// Regimes that transfer parameters also write out_dir/ckpt-0, the AST
/// model before its first update.
TrainSummary RunTraining(const ExperimentConfig &config);

int CmdTrain(const ExperimentConfig &config, std::ostream &out, std::ostream &err);

struct DecodeOptions {
  std::vector<std::string> checkpoints;  // several: ensemble
  std::string asr_checkpoint, mt_checkpoint;
  bool cascade = false;
  std::size_t beam = 1;  // 1: greedy
  double length_alpha = 1.0;
  std::size_t max_len = 300;
  std::size_t nbest = 0;  // >0: write the n best per utterance in n-best format
  std::string input;      // utterance ids (speech models) or sentences (MT)
  std::string features;   // feature cache for speech input
  std::string output;     // empty: `out`
};

/// Vocabularies are read from the directory of the (first) checkpoint.
int CmdDecode(const DecodeOptions &options, std::ostream &out, std::ostream &err);

/// Prints "BLEU = x" or "WER = x" and writes the breakdown to
/// `breakdown_path` (default: the hypothesis path plus ".bleu" or ".wer").
int CmdEval(const std::string &hyp_path, const std::string &ref_path, const std::string &metric,
            const std::string &breakdown_path, std::ostream &out, std::ostream &err);

/// Extracts features of every *.wav in `wav_dir` (utterance id = file stem,
/// sorted by id) into an SLTF cache. Unreadable files are skipped with a
/// warning; nothing readable is a usage error.
int CmdFeatures(const std::string &wav_dir, const std::string &out_path, std::ostream &out,
                std::ostream &err);

int CmdMakeToyCorpus(const std::string &dir, const ToyCorpusOptions &options, std::ostream &out,
                     std::ostream &err);

}  // namespace slt

#endif  // SLT_HARNESS_COMMANDS_H_

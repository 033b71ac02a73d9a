// tools/slt-main.cc
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

// Command-line front end: train, decode, eval, features, make-toy-corpus.

#include <iostream>

#include "CLI11.hpp"
#include "slt/base/error.h"
#include "slt/harness/commands.h"

int main(int argc, char **argv) {
  using namespace slt;
  CLI::App app{"Attention-based speech translation toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  bool print_config = false;
  auto *train = app.add_subcommand("train", "Train a model (see --print-config for all keys)");
  train->add_option("-c,--config", config_path, "Experiment config file");
  train->add_option("-s,--set", overrides, "Override a config entry: key=value")->take_all();
  train->add_flag("--print-config", print_config, "Print the effective config and exit");

  DecodeOptions dec;
  bool greedy = false;
  auto *decode = app.add_subcommand("decode", "Translate or transcribe with trained checkpoints");
  decode->add_option("--ckpt", dec.checkpoints, "Checkpoint; repeat to ensemble");
  decode->add_option("--asr-ckpt", dec.asr_checkpoint, "ASR checkpoint for cascade decoding");
  decode->add_option("--mt-ckpt", dec.mt_checkpoint, "MT checkpoint for cascade decoding");
  decode->add_flag("--cascade", dec.cascade, "Transcribe with the ASR model, then translate");
  decode->add_option("--beam", dec.beam, "Beam width (1 = greedy)")->capture_default_str();
  decode->add_flag("--greedy", greedy, "Greedy decoding (same as --beam 1)");
  decode->add_option("--alpha", dec.length_alpha, "Length normalisation exponent")->capture_default_str();
  decode->add_option("--max-len", dec.max_len, "Maximum output length")->capture_default_str();
  decode->add_option("--nbest", dec.nbest, "Write the n best hypotheses per input in n-best format");
  decode->add_option("-i,--input", dec.input, "Utterance ids (speech) or sentences (MT)")->required();
  decode->add_option("-f,--features", dec.features, "Feature cache for speech input");
  decode->add_option("-o,--output", dec.output, "Output file (default: stdout)");

  std::string hyp, ref, metric = "bleu", breakdown;
  auto *eval = app.add_subcommand("eval", "Score hypotheses against references");
  eval->add_option("--hyp", hyp, "Hypothesis file")->required();
  eval->add_option("--ref", ref, "Reference file")->required();
  eval->add_option("--metric", metric, "bleu or wer")->capture_default_str();
  eval->add_option("--breakdown", breakdown, "Breakdown file (default: <hyp>.<metric>)");

  std::string wav_dir, cache;
  auto *features = app.add_subcommand("features", "Extract a feature cache from a WAV directory");
  features->add_option("wav_dir", wav_dir, "Directory of .wav files")->required();
  features->add_option("output", cache, "Output SLTF cache")->required();

  std::string toy_dir;
  ToyCorpusOptions toy;
  auto *make_toy = app.add_subcommand("make-toy-corpus", "Generate the synthetic toy corpus");
  make_toy->add_option("dir", toy_dir, "Output directory")->required();
  make_toy->add_option("--train", toy.train, "Training utterances")->capture_default_str();
  make_toy->add_option("--dev", toy.dev, "Dev utterances")->capture_default_str();
  make_toy->add_option("--test", toy.test, "Test utterances")->capture_default_str();
  make_toy->add_option("--seed", toy.seed, "Random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*train) {
    return RunGuarded(std::cerr, [&] {
      ExperimentConfig config = config_path.empty() ? ExperimentConfig{} : ExperimentConfig::Load(config_path);
      for (const std::string &kv : overrides) {
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
        config.Set(kv.substr(0, eq), kv.substr(eq + 1));
      }
      if (print_config) {
        std::cout << config.Serialize();
        return static_cast<int>(kExitOk);
      }
      return CmdTrain(config, std::cout, std::cerr);
    });
  }
  if (*decode) {
    if (greedy) dec.beam = 1;
    return CmdDecode(dec, std::cout, std::cerr);
  }
  if (*eval) return CmdEval(hyp, ref, metric, breakdown, std::cout, std::cerr);
  if (*features) return CmdFeatures(wav_dir, cache, std::cout, std::cerr);
  return CmdMakeToyCorpus(toy_dir, toy, std::cout, std::cerr);
}

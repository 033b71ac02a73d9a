// src/harness/config.cc
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

#include "slt/harness/config.h"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "slt/base/error.h"

namespace slt {

namespace {

std::string Trim(const std::string &s) {
  const std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::size_t ToSize(const std::string &key, const std::string &v) {
  std::size_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
    throw ConfigError(key + ": expected a non-negative integer, got '" + v + "'");
  return out;
}

double ToDouble(const std::string &key, const std::string &v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception &) {
  }
  throw ConfigError(key + ": expected a number, got '" + v + "'");
}

std::string FromDouble(double d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

std::vector<std::string> SplitList(const std::string &v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!Trim(item).empty()) out.push_back(Trim(item));
  return out;
}

std::string JoinList(const std::vector<std::string> &v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
  return out;
}

struct Field {
  std::string key;
  std::string doc;
  std::function<std::string(const ExperimentConfig &)> get;
  std::function<void(ExperimentConfig &, const std::string &)> set;
};

template <typename T>
Field SizeField(const char *key, T ExperimentConfig::*member, const char *doc) {
  return {key, doc, [member](const ExperimentConfig &c) { return std::to_string(c.*member); },
          [member, key](ExperimentConfig &c, const std::string &v) { c.*member = ToSize(key, v); }};
}

Field DoubleField(const char *key, double ExperimentConfig::*member, const char *doc) {
  return {key, doc, [member](const ExperimentConfig &c) { return FromDouble(c.*member); },
          [member, key](ExperimentConfig &c, const std::string &v) { c.*member = ToDouble(key, v); }};
}

Field StringField(const char *key, std::string ExperimentConfig::*member, const char *doc) {
  return {key, doc, [member](const ExperimentConfig &c) { return c.*member; },
          [member](ExperimentConfig &c, const std::string &v) { c.*member = v; }};
}

const std::vector<Field> &Fields() {
  using C = ExperimentConfig;
  static const std::vector<Field> fields = {
      {"task", "asr | mt | ast", [](const C &c) { return TaskName(c.task); },
       [](C &c, const std::string &v) { c.task = ParseTask(v); }},
      {"regime", "end2end | pretrained | multitask | cascaded (non-end2end regimes need task = ast)",
       [](const C &c) { return RegimeName(c.regime); },
       [](C &c, const std::string &v) { c.regime = ParseRegime(v); }},
      SizeField("seed", &C::seed, "random seed for initialisation, batching and dropout"),
      StringField("out_dir", &C::out_dir, "directory for checkpoints, vocabularies and the log"),
      StringField("features", &C::features, "SLTF feature cache holding every utterance"),
      StringField("train_ids", &C::train_ids, "training utterance ids, one per line"),
      StringField("dev_ids", &C::dev_ids, "dev utterance ids"),
      StringField("train_transcripts", &C::train_transcripts,
                  "source-language transcripts of train_ids"),
      StringField("dev_transcripts", &C::dev_transcripts, "source-language transcripts of dev_ids"),
      {"train_translations", "target-language references of train_ids; comma separated, "
                             "each file adds one copy of the training sources",
       [](const C &c) { return JoinList(c.train_translations); },
       [](C &c, const std::string &v) { c.train_translations = SplitList(v); }},
      StringField("dev_translations", &C::dev_translations, "target-language references of dev_ids"),
      SizeField("speech_input1", &C::speech_input1, "first tanh input layer"),
      SizeField("speech_input2", &C::speech_input2, "second tanh input layer"),
      SizeField("conv_filters", &C::conv_filters, "filters per convolution"),
      SizeField("encoder_layers", &C::encoder_layers, "bidirectional LSTM layers of the speech encoder"),
      SizeField("encoder_cell", &C::encoder_cell, "speech encoder LSTM cell size"),
      SizeField("text_embedding", &C::text_embedding, "source embedding size of the text encoder"),
      SizeField("text_cell", &C::text_cell, "text encoder LSTM cell size"),
      SizeField("decoder_cell", &C::decoder_cell, "decoder LSTM cell size"),
      SizeField("target_embedding", &C::target_embedding, "target embedding size"),
      SizeField("output_layer", &C::output_layer, "tanh output layer size, 0 for none"),
      SizeField("attention", &C::attention, "attention layer size"),
      SizeField("bpe_merges", &C::bpe_merges, "BPE merges learned on the MT source side"),
      SizeField("updates", &C::updates, "updates of the main task"),
      SizeField("pretrain_updates", &C::pretrain_updates,
                "ASR and MT updates each before transfer (pretrained, multitask, cascaded)"),
      SizeField("batch_size", &C::batch_size, "sequences per mini-batch"),
      DoubleField("learning_rate", &C::learning_rate, "Adam learning rate"),
      DoubleField("dropout", &C::dropout, "variational dropout rate"),
      DoubleField("symbol_dropout", &C::symbol_dropout, "symbol dropout rate for MT updates"),
      SizeField("max_source_frames", &C::max_source_frames, "training sources are cut to this"),
      SizeField("max_target_chars", &C::max_target_chars, "training targets are cut to this"),
      SizeField("eval_interval", &C::eval_interval, "updates between dev evaluations"),
      SizeField("dev_max_len", &C::dev_max_len, "output length limit when decoding dev"),
      SizeField("patience", &C::patience,
                "stop after this many evaluations without improvement, 0 to disable"),
  };
  return fields;
}

const Field &FindField(const std::string &key) {
  for (const Field &f : Fields())
    if (f.key == key) return f;
  throw ConfigError("unknown config key '" + key + "'");
}

}  // namespace

std::string RegimeName(Regime regime) {
  switch (regime) {
    case Regime::kEnd2End: return "end2end";
    case Regime::kPretrained: return "pretrained";
    case Regime::kMultitask: return "multitask";
    case Regime::kCascaded: return "cascaded";
  }
  return "?";
}

Regime ParseRegime(const std::string &name) {
  for (Regime r : {Regime::kEnd2End, Regime::kPretrained, Regime::kMultitask, Regime::kCascaded})
    if (RegimeName(r) == name) return r;
  throw ConfigError("unknown regime '" + name + "'");
}

void ExperimentConfig::Set(const std::string &key, const std::string &value) {
  FindField(key).set(*this, Trim(value));
}

std::string ExperimentConfig::Get(const std::string &key) const { return FindField(key).get(*this); }

const std::vector<std::string> &ExperimentConfig::Keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const Field &f : Fields()) k.push_back(f.key);
    return k;
  }();
  return keys;
}

std::string ExperimentConfig::Describe(const std::string &key) {
  const Field &f = FindField(key);
  return f.key + ": " + f.doc + " (default: " + f.get(ExperimentConfig{}) + ")";
}

std::string ExperimentConfig::Serialize() const {
  std::string out;
  for (const Field &f : Fields()) out += f.key + " = " + f.get(*this) + "\n";
  return out;
}

ExperimentConfig ExperimentConfig::Parse(const std::string &text) {
  ExperimentConfig c;
  std::istringstream is(text);
  std::string line;
  for (int lineno = 1; std::getline(is, line); ++lineno) {
    const std::string body = Trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    c.Set(Trim(body.substr(0, eq)), body.substr(eq + 1));
  }
  return c;
}

ExperimentConfig ExperimentConfig::Load(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw ConfigError(path + ": cannot open config");
  std::stringstream ss;
  ss << is.rdbuf();
  try {
    return Parse(ss.str());
  } catch (const ConfigError &e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void ExperimentConfig::Save(const std::string &path) const {
  std::ofstream os(path);
  os << Serialize();
  if (!os) throw ConfigError(path + ": cannot write config");
}

void ExperimentConfig::Validate(bool check_paths) const {
  if (regime != Regime::kEnd2End && task != Task::kAst)
    throw ConfigError("regime " + RegimeName(regime) + " is only defined for task ast");
  for (const char *key : {"speech_input1", "speech_input2", "conv_filters", "encoder_layers",
                          "encoder_cell", "text_embedding", "text_cell", "decoder_cell",
                          "target_embedding", "attention", "batch_size", "max_source_frames",
                          "max_target_chars", "dev_max_len"})
    if (Get(key) == "0") throw ConfigError(std::string(key) + " must be positive");
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be positive");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw ConfigError("dropout must lie in [0, 1)");
  if (!(symbol_dropout >= 0.0 && symbol_dropout <= 1.0))
    throw ConfigError("symbol_dropout must lie in [0, 1]");
  if (regime != Regime::kEnd2End && text_cell != encoder_cell)
    throw ConfigError("text_cell must equal encoder_cell when the decoder is shared or transferred");
  if (out_dir.empty()) throw ConfigError("out_dir must be set");
  if (!check_paths) return;

  const bool speech = task != Task::kMt || regime != Regime::kEnd2End;
  const bool transcripts = task != Task::kAst || regime != Regime::kEnd2End;
  const bool translations = task != Task::kAsr;
  std::vector<std::pair<std::string, std::string>> needed;
  if (speech) {
    needed.insert(needed.end(), {{"features", features}, {"train_ids", train_ids}, {"dev_ids", dev_ids}});
  }
  if (transcripts || task == Task::kMt)
    needed.insert(needed.end(),
                  {{"train_transcripts", train_transcripts}, {"dev_transcripts", dev_transcripts}});
  if (translations) {
    if (train_translations.empty()) throw ConfigError("train_translations must be set");
    for (const std::string &p : train_translations) needed.emplace_back("train_translations", p);
    needed.emplace_back("dev_translations", dev_translations);
  }
  for (const auto &[key, path] : needed) {
    if (path.empty()) throw ConfigError(key + " must be set");
    if (!std::filesystem::exists(path)) throw ConfigError(key + ": no such file '" + path + "'");
  }
}

ModelConfig ExperimentConfig::ModelFor(Task t, std::size_t target_vocab,
                                       std::size_t source_vocab) const {
  ModelConfig m;
  m.encoder = t == Task::kMt ? EncoderKind::kText : EncoderKind::kSpeech;
  m.speech.input_layer1 = speech_input1;
  m.speech.input_layer2 = speech_input2;
  m.speech.conv_filters = conv_filters;
  m.speech.num_layers = encoder_layers;
  m.speech.cell_size = encoder_cell;
  m.text.vocab_size = source_vocab;
  m.text.embedding_size = text_embedding;
  m.text.cell_size = text_cell;
  m.decoder.vocab_size = target_vocab;
  m.decoder.cell_size = decoder_cell;
  m.decoder.embedding_size = target_embedding;
  m.decoder.output_layer = output_layer;
  m.decoder.attention_size = attention;
  m.Finalize();
  return m;
}

TrainConfig ExperimentConfig::Training() const {
  TrainConfig t;
  t.batch_size = batch_size;
  t.dropout = dropout;
  t.symbol_dropout = symbol_dropout;
  t.max_source_frames = max_source_frames;
  t.max_target_chars = max_target_chars;
  t.eval_interval = eval_interval;
  t.dev_max_len = dev_max_len;
  t.seed = seed;
  t.adam.learning_rate = learning_rate;
  return t;
}

}  // namespace slt

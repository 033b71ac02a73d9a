// src/harness/commands.cc
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

#include "slt/harness/commands.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>

#include "slt/audio/feature-cache.h"
#include "slt/audio/mfcc.h"
#include "slt/base/error.h"
#include "slt/decode/search.h"
#include "slt/harness/corpus.h"
#include "slt/metrics/scores.h"
#include "slt/model/checkpoint.h"
#include "slt/train/transfer.h"

namespace slt {

namespace fs = std::filesystem;

int RunGuarded(std::ostream &err, const std::function<int()> &body) {
  try {
    return body();
  } catch (const NumericError &e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const fs::filesystem_error &e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

namespace {

std::string InDir(const std::string &dir, const std::string &name) {
  return (fs::path(dir) / name).string();
}

// Training and dev data of one task together with the vocabularies that
// define its model.
struct TaskData {
  Task task;
  std::vector<Example> train, dev;
  Vocabulary target;
  Vocabulary source;  // MT only
  BpeModel bpe;       // MT only
};

class DataLoader {
 public:
  explicit DataLoader(const ExperimentConfig &config) : config_(config) {}

  TaskData Load(Task task) {
    const ExperimentConfig &c = config_;
    TaskData d;
    d.task = task;
    std::vector<CorpusPair> train, dev;
    switch (task) {
      case Task::kAst:
        train = LoadCorpus(c.train_ids, c.train_translations);
        dev = LoadCorpus(c.dev_ids, {c.dev_translations});
        break;
      case Task::kAsr:
        train = LoadCorpus(c.train_ids, {c.train_transcripts});
        dev = LoadCorpus(c.dev_ids, {c.dev_transcripts});
        break;
      case Task::kMt:
        train = LoadCorpus(c.train_transcripts, c.train_translations);
        dev = LoadCorpus(c.dev_transcripts, {c.dev_translations});
        break;
    }
    d.target = TargetVocabulary(train);
    if (task == Task::kMt) {
      d.bpe = LearnSourceBpe(train, c.bpe_merges);
      d.source = SourceVocabulary(train, d.bpe);
      d.train = TextExamples(train, d.bpe, d.source, d.target);
      d.dev = TextExamples(dev, d.bpe, d.source, d.target);
    } else {
      d.train = SpeechExamples(train, Features(), d.target);
      d.dev = SpeechExamples(dev, Features(), d.target);
    }
    const TrainConfig t = c.Training();
    for (Example &e : d.train) e = Truncate(e, t);
    return d;
  }

 private:
  const std::map<std::string, FeatureMatrix> &Features() {
    if (!features_) features_ = LoadFeatureIndex(config_.features);
    return *features_;
  }

  const ExperimentConfig &config_;
  std::optional<std::map<std::string, FeatureMatrix>> features_;
};

void SaveVocabularies(const std::string &dir, const TaskData &d) {
  fs::create_directories(dir);
  d.target.Save(InDir(dir, kTargetVocabFile));
  if (d.task == Task::kMt) {
    d.source.Save(InDir(dir, kSourceVocabFile));
    d.bpe.Save(InDir(dir, kBpeFile));
  }
}

Seq2SeqModel NewModel(const ExperimentConfig &c, const TaskData &d) {
  Seq2SeqModel m(c.ModelFor(d.task, d.target.size(), d.source.size()));
  m.Initialize(c.seed);
  return m;
}

TrainHooks MakeHooks(const ExperimentConfig &c, const std::string &dir, std::ofstream *log,
                     Task primary) {
  TrainHooks hooks;
  hooks.checkpoint_dir = dir;
  hooks.log = log;
  if (c.patience > 0) {
    auto best = std::make_shared<std::optional<double>>();
    auto stale = std::make_shared<std::size_t>(0);
    const bool higher = HigherIsBetter(primary);
    const std::size_t patience = c.patience;
    hooks.stop = [best, stale, higher, patience](const EvalRecord &r) {
      if (!*best || (higher ? r.value > **best : r.value < **best)) {
        *best = r.value;
        *stale = 0;
      } else {
        ++*stale;
      }
      return *stale >= patience;
    };
  }
  return hooks;
}

TrainSummary TrainSingle(const ExperimentConfig &c, const TaskData &d, Seq2SeqModel *model,
                         const std::string &dir, std::size_t updates) {
  SaveVocabularies(dir, d);
  std::ofstream log(InDir(dir, kLogFile));
  TrainSummary s;
  s.model_dir = dir;
  const TrainResult r = Train({{d.task, model, &d.train, &d.dev, &d.target}}, false, c.Training(),
                              updates, MakeHooks(c, dir, &log, d.task));
  s.evals = r.evals;
  s.best_step = r.best_step;
  s.updates = r.updates;
  return s;
}

}  // namespace

TrainSummary RunTraining(const ExperimentConfig &c) {
  c.Validate(true);
  fs::create_directories(c.out_dir);
  c.Save(InDir(c.out_dir, kConfigFile));
  DataLoader loader(c);

  if (c.regime == Regime::kEnd2End) {
    const TaskData d = loader.Load(c.task);
    Seq2SeqModel model = NewModel(c, d);
    return TrainSingle(c, d, &model, c.out_dir, c.updates);
  }

  // Every other regime starts from separately trained ASR and MT models.
  const std::string asr_dir = InDir(c.out_dir, "asr"), mt_dir = InDir(c.out_dir, "mt");
  const TaskData asr_data = loader.Load(Task::kAsr);
  const TaskData mt_data = loader.Load(Task::kMt);
  {
    Seq2SeqModel asr = NewModel(c, asr_data);
    TrainSingle(c, asr_data, &asr, asr_dir, c.pretrain_updates);
    Seq2SeqModel mt = NewModel(c, mt_data);
    TrainSingle(c, mt_data, &mt, mt_dir, c.pretrain_updates);
  }
  if (c.regime == Regime::kCascaded) {
    TrainSummary s;
    s.model_dir = asr_dir;
    return s;
  }

  Seq2SeqModel asr = LoadModel(InDir(asr_dir, "ckpt-best"));
  Seq2SeqModel mt = LoadModel(InDir(mt_dir, "ckpt-best"));
  TaskData ast_data = loader.Load(Task::kAst);
  Seq2SeqModel ast = NewModel(c, ast_data);
  InitFromPretrained(&ast.params(), asr.params(), mt.params());
  SaveModel(InDir(c.out_dir, "ckpt-0"), ast);
  if (c.regime == Regime::kPretrained) return TrainSingle(c, ast_data, &ast, c.out_dir, c.updates);

  ShareParameters(&asr.params(), ast.params(), "speech_encoder/");
  ShareParameters(&mt.params(), ast.params(), "decoder/");
  SaveVocabularies(c.out_dir, ast_data);
  std::ofstream log(InDir(c.out_dir, kLogFile));
  const TrainResult r =
      Train({{Task::kAst, &ast, &ast_data.train, &ast_data.dev, &ast_data.target},
             {Task::kAsr, &asr, &asr_data.train, &asr_data.dev, &asr_data.target},
             {Task::kMt, &mt, &mt_data.train, &mt_data.dev, &mt_data.target}},
            true, c.Training(), c.updates, MakeHooks(c, c.out_dir, &log, Task::kAst));
  TrainSummary s;
  s.model_dir = c.out_dir;
  s.evals = r.evals;
  s.best_step = r.best_step;
  s.updates = r.updates;
  return s;
}

int CmdTrain(const ExperimentConfig &config, std::ostream &out, std::ostream &err) {
  return RunGuarded(err, [&] {
    const TrainSummary s = RunTraining(config);
    if (config.regime == Regime::kCascaded) {
      out << "trained " << InDir(config.out_dir, "asr") << " and " << InDir(config.out_dir, "mt")
          << '\n';
      return kExitOk;
    }
    out << "trained " << s.updates << " updates; best checkpoint " << s.model_dir << "/ckpt-best";
    if (!s.evals.empty()) out << " (step " << s.best_step << ")";
    out << '\n';
    return kExitOk;
  });
}

namespace {

struct LoadedModel {
  std::unique_ptr<Seq2SeqModel> model;
  Vocabulary target, source;
  BpeModel bpe;
};

LoadedModel LoadForDecoding(const std::string &checkpoint) {
  LoadedModel m;
  m.model = std::make_unique<Seq2SeqModel>(LoadModel(checkpoint));
  const std::string dir = fs::path(checkpoint).parent_path().string();
  m.target = Vocabulary::Load(InDir(dir, kTargetVocabFile));
  if (m.target.size() != m.model->config().decoder.vocab_size)
    throw ConfigError(checkpoint + " predicts " +
                      std::to_string(m.model->config().decoder.vocab_size) + " symbols but " +
                      InDir(dir, kTargetVocabFile) + " has " + std::to_string(m.target.size()));
  if (m.model->config().encoder == EncoderKind::kText) {
    m.source = Vocabulary::Load(InDir(dir, kSourceVocabFile));
    m.bpe = BpeModel::Load(InDir(dir, kBpeFile));
    if (m.source.size() != m.model->config().text.vocab_size)
      throw ConfigError(checkpoint + " embeds " + std::to_string(m.model->config().text.vocab_size) +
                        " source symbols but " + InDir(dir, kSourceVocabFile) + " has " +
                        std::to_string(m.source.size()));
  }
  return m;
}

}  // namespace

int CmdDecode(const DecodeOptions &o, std::ostream &out, std::ostream &err) {
  return RunGuarded(err, [&] {
    if (o.cascade && (o.asr_checkpoint.empty() || o.mt_checkpoint.empty()))
      throw ConfigError("cascade decoding needs both an ASR and an MT checkpoint");
    if (!o.cascade && o.checkpoints.empty()) throw ConfigError("no checkpoint given");
    if (o.beam == 0) throw ConfigError("beam width must be positive");
    if (o.input.empty()) throw ConfigError("no input given");
    BeamConfig beam;
    beam.width = o.beam;
    beam.max_len = o.max_len;
    beam.length_alpha = o.length_alpha;

    std::vector<LoadedModel> models;
    for (const std::string &p : o.cascade ? std::vector<std::string>{o.asr_checkpoint, o.mt_checkpoint}
                                          : o.checkpoints)
      models.push_back(LoadForDecoding(p));
    const bool speech = models.front().model->config().encoder == EncoderKind::kSpeech;
    if (o.cascade && (!speech || models[1].model->config().encoder != EncoderKind::kText))
      throw ConfigError("cascade decoding needs a speech ASR model and a text MT model");
    for (std::size_t i = 1; i < models.size() && !o.cascade; ++i)
      if (!(models[i].target == models[0].target))
        throw ConfigError(o.checkpoints[i] + " uses a different target vocabulary");

    const std::vector<std::string> lines = ReadLines(o.input);
    std::map<std::string, FeatureMatrix> features;
    if (speech) {
      if (o.features.empty()) throw ConfigError("speech models need a feature cache");
      features = LoadFeatureIndex(o.features);
    }
    std::vector<const Seq2SeqModel *> ensemble;
    for (const LoadedModel &m : models) ensemble.push_back(m.model.get());

    std::ofstream file;
    if (!o.output.empty()) {
      file.open(o.output);
      if (!file) throw ConfigError(o.output + ": cannot write");
    }
    std::ostream &sink = o.output.empty() ? out : file;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      SourceSequence src;
      const std::string id = speech ? lines[i] : std::to_string(i + 1);
      if (speech) {
        const auto it = features.find(lines[i]);
        if (it == features.end()) throw ConfigError("utterance '" + lines[i] + "' is not in " + o.features);
        src.features = it->second.frames;
      } else {
        src.tokens = PrepareMtSource(lines[i], models[0].bpe, models[0].source);
      }
      if (o.cascade) {
        const CascadeResources res{&models[0].target, &models[1].bpe, &models[1].source,
                                   &models[1].target};
        sink << CascadeTranslate({ensemble[0]}, {ensemble[1]}, src.features, res, beam).translation
             << '\n';
      } else if (o.nbest > 0) {
        std::vector<Hypothesis> hyps = o.beam == 1
                                           ? std::vector<Hypothesis>{GreedyDecode(ensemble, src, o.max_len)}
                                           : BeamDecode(ensemble, src, beam);
        if (hyps.size() > o.nbest) hyps.resize(o.nbest);
        sink << FormatNBest(id, hyps, models[0].target, o.length_alpha);
      } else {
        sink << DecodeChars(Decode(ensemble, src, beam).tokens, models[0].target) << '\n';
      }
    }
    if (!sink) throw ConfigError("writing the output failed");
    return kExitOk;
  });
}

int CmdEval(const std::string &hyp_path, const std::string &ref_path, const std::string &metric,
            const std::string &breakdown_path, std::ostream &out, std::ostream &err) {
  return RunGuarded(err, [&] {
    if (metric != "bleu" && metric != "wer") throw ConfigError("unknown metric '" + metric + "'");
    const std::vector<std::string> hyps = ReadLines(hyp_path), refs = ReadLines(ref_path);
    if (hyps.size() != refs.size())
      throw ConfigError(hyp_path + " has " + std::to_string(hyps.size()) + " lines but " + ref_path +
                        " has " + std::to_string(refs.size()));
    std::string line, breakdown;
    if (metric == "bleu") {
      const BleuResult r = CorpusBleu(hyps, refs);
      line = FormatBleu(r);
      breakdown = BleuBreakdown(r);
    } else {
      const WerResult r = CorpusWer(hyps, refs);
      line = FormatWer(r);
      breakdown = WerBreakdown(r);
    }
    const std::string path = breakdown_path.empty() ? hyp_path + "." + metric : breakdown_path;
    std::ofstream os(path);
    os << breakdown;
    if (!os) throw ConfigError(path + ": cannot write");
    out << line << '\n';
    return kExitOk;
  });
}

int CmdFeatures(const std::string &wav_dir, const std::string &out_path, std::ostream &out,
                std::ostream &err) {
  return RunGuarded(err, [&] {
    if (!fs::is_directory(wav_dir)) throw ConfigError(wav_dir + ": not a directory");
    std::vector<fs::path> wavs;
    for (const fs::directory_entry &e : fs::directory_iterator(wav_dir))
      if (e.is_regular_file() && e.path().extension() == ".wav") wavs.push_back(e.path());
    std::sort(wavs.begin(), wavs.end(),
              [](const fs::path &a, const fs::path &b) { return a.stem() < b.stem(); });
    const MfccConfig mfcc;
    std::vector<FeatureMatrix> features;
    for (const fs::path &p : wavs) {
      try {
        FeatureMatrix f = ExtractFeatures(p.string(), mfcc);
        f.id = p.stem().string();
        features.push_back(std::move(f));
      } catch (const Error &e) {
        err << "warning: skipping " << p.string() << ": " << e.what() << '\n';
      }
    }
    if (features.empty()) throw ConfigError("no readable WAV file in " + wav_dir);
    WriteFeatureCache(out_path, features);
    out << "wrote " << features.size() << " utterances to " << out_path << '\n';
    return kExitOk;
  });
}

int CmdMakeToyCorpus(const std::string &dir, const ToyCorpusOptions &options, std::ostream &out,
                     std::ostream &err) {
  return RunGuarded(err, [&] {
    const ToyCorpusFiles f = MakeToyCorpus(dir, options);
    out << "wrote " << options.train << "/" << options.dev << "/" << options.test
        << " train/dev/test utterances to " << f.dir << "; config " << f.config << '\n';
    return kExitOk;
  });
}

}  // namespace slt

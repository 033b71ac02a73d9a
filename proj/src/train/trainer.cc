// src/train/trainer.cc
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

#include "slt/train/trainer.h"

#include <algorithm>
#include <filesystem>
#include <map>
#include <sstream>

#include "slt/base/error.h"
#include "slt/decode/search.h"
#include "slt/metrics/scores.h"
#include "slt/model/checkpoint.h"
#include "slt/train/dropout.h"

namespace slt {

namespace {

std::size_t SourceLength(const Example &e) {
  return e.source.features.empty() ? e.source.tokens.size() : e.source.features.dim(0);
}

}  // namespace

Example Truncate(const Example &example, const TrainConfig &config) {
  Example out = example;
  const Tensor &x = example.source.features;
  if (!x.empty() && x.dim(0) > config.max_source_frames) {
    const std::size_t cols = x.dim(1);
    std::vector<double> head(x.data(), x.data() + config.max_source_frames * cols);
    out.source.features = Tensor({config.max_source_frames, cols}, std::move(head));
  }
  std::vector<int> &t = out.target;
  if (!t.empty() && t.back() == Vocabulary::kEos) t.pop_back();
  if (t.size() > config.max_target_chars) t.resize(config.max_target_chars);
  t.push_back(Vocabulary::kEos);
  return out;
}

BatchStream::BatchStream(const std::vector<Example> *data, std::size_t batch_size,
                         std::uint64_t seed)
    : rng_(seed) {
  if (data == nullptr || data->empty()) throw ConfigError("training set is empty");
  if (batch_size == 0) throw ConfigError("batch size must be positive");
  std::vector<const Example *> sorted;
  for (const Example &e : *data) sorted.push_back(&e);
  std::stable_sort(sorted.begin(), sorted.end(), [](const Example *a, const Example *b) {
    return SourceLength(*a) < SourceLength(*b);
  });
  for (std::size_t i = 0; i < sorted.size(); i += batch_size)
    batches_.emplace_back(sorted.begin() + i,
                          sorted.begin() + std::min(sorted.size(), i + batch_size));
  order_.resize(batches_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
  cursor_ = order_.size();  // forces a shuffle on the first call
}

const std::vector<const Example *> &BatchStream::Next() {
  if (cursor_ == order_.size()) {
    std::shuffle(order_.begin(), order_.end(), rng_);
    cursor_ = 0;
    ++epoch_;
  }
  return batches_[order_[cursor_++]];
}

StepResult TrainStep(Seq2SeqModel &model, const std::vector<const Example *> &batch, Task task,
                     const TrainConfig &config, Adam *adam, std::mt19937_64 *rng) {
  if (batch.empty()) throw ConfigError("empty batch");
  const std::vector<Parameter *> params = model.params().All();
  for (Parameter *p : params) p->grad.Fill(0.0);
  const DropoutMasks masks = MakeDropoutMasks(model.config(), config.dropout, rng);
  const bool drop_symbols = task == Task::kMt && config.symbol_dropout > 0.0;

  StepResult result;
  double total = 0.0;
  for (const Example *e : batch) {
    Graph g;
    Var loss;
    if (drop_symbols) {
      SourceSequence src = e->source;
      src.tokens = SymbolDropout(src.tokens, config.symbol_dropout, rng);
      const std::vector<int> history = SymbolDropout(e->target, config.symbol_dropout, rng);
      loss = model.TeacherForcedLoss(g, src, e->target, &masks, &history);
    } else {
      loss = model.TeacherForcedLoss(g, e->source, e->target, &masks);
    }
    total += loss.value().item();
    result.symbols += e->target.size();
    g.Backward(loss);
  }
  const double scale = 1.0 / static_cast<double>(result.symbols);
  for (Parameter *p : params)
    for (double &v : p->grad.values()) v *= scale;
  adam->Step(params);
  result.mean_loss = total * scale;
  return result;
}

double EvaluateDev(const Seq2SeqModel &model, const std::vector<Example> &dev,
                   const Vocabulary &target_vocab, Task task, std::size_t max_len) {
  if (dev.empty()) throw ConfigError("dev set for " + TaskName(task) + " is empty");
  std::vector<std::string> hyps, refs;
  for (const Example &e : dev) {
    hyps.push_back(DecodeChars(GreedyDecode({&model}, e.source, max_len).tokens, target_vocab));
    refs.push_back(DecodeChars(e.target, target_vocab));
  }
  return task == Task::kAsr ? CorpusWer(hyps, refs).wer : CorpusBleu(hyps, refs).score;
}

std::string FormatLogLine(const EvalRecord &r) {
  std::ostringstream os;
  os.precision(6);
  os << std::fixed << r.step << '\t' << TaskName(r.task) << '\t' << r.metric << '\t' << r.value;
  return os.str();
}

TrainResult Train(const std::vector<TaskSetup> &tasks, bool multitask, const TrainConfig &config,
                  std::size_t updates, const TrainHooks &hooks) {
  if (tasks.empty()) throw ConfigError("no task to train");
  std::vector<const TaskSetup *> active{&tasks[0]};
  std::map<Task, std::size_t> slot;  // task -> index into `active`
  slot[tasks[0].task] = 0;
  if (multitask) {
    for (const TaskSetup &t : tasks)
      if (!slot.count(t.task)) {
        slot[t.task] = active.size();
        active.push_back(&t);
      }
    for (Task t : {Task::kAst, Task::kAsr, Task::kMt})
      if (!slot.count(t)) throw ConfigError("multi-task training needs an " + TaskName(t) + " task");
  }

  std::mt19937_64 master(config.seed);
  std::vector<BatchStream> streams;
  for (const TaskSetup *t : active) streams.emplace_back(t->train, config.batch_size, master());
  std::mt19937_64 noise(master());
  Adam adam(config.adam);
  if (!hooks.checkpoint_dir.empty()) std::filesystem::create_directories(hooks.checkpoint_dir);
  const auto ckpt = [&](const std::string &name) {
    return (std::filesystem::path(hooks.checkpoint_dir) / name).string();
  };

  TrainResult result;
  std::vector<std::pair<std::size_t, double>> history;
  for (std::size_t step = 0; step < updates; ++step) {
    const Task task = multitask ? ScheduleTask(step) : tasks[0].task;
    const std::size_t k = slot.at(task);
    const StepResult r =
        TrainStep(*active[k]->model, streams[k].Next(), task, config, &adam, &noise);
    result.updates = step + 1;
    if (hooks.on_update) hooks.on_update(step + 1, task, r);

    if (config.eval_interval == 0 || (step + 1) % config.eval_interval != 0) continue;
    bool stop = false;
    for (const TaskSetup *t : active) {
      const EvalRecord rec{step + 1, t->task, TaskMetric(t->task),
                           EvaluateDev(*t->model, *t->dev, *t->target_vocab, t->task,
                                       config.dev_max_len)};
      result.evals.push_back(rec);
      if (hooks.log) *hooks.log << FormatLogLine(rec) << '\n' << std::flush;
      if (t != active[0]) continue;
      history.emplace_back(rec.step, rec.value);
      result.best_step = SelectCheckpoint(history, HigherIsBetter(t->task));
      if (!hooks.checkpoint_dir.empty()) {
        SaveModel(ckpt("ckpt-" + std::to_string(rec.step)), *t->model);
        if (result.best_step == rec.step) SaveModel(ckpt("ckpt-best"), *t->model);
      }
      if (hooks.stop && hooks.stop(rec)) stop = true;
    }
    if (stop) break;
  }
  if (history.empty()) {
    result.best_step = result.updates;
    if (!hooks.checkpoint_dir.empty()) {
      SaveModel(ckpt("ckpt-" + std::to_string(result.updates)), *tasks[0].model);
      SaveModel(ckpt("ckpt-best"), *tasks[0].model);
    }
  }
  return result;
}

}  // namespace slt

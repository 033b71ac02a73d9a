// include/slt/train/trainer.h
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

#ifndef SLT_TRAIN_TRAINER_H_
#define SLT_TRAIN_TRAINER_H_

#include <cstdint>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "slt/model/seq2seq.h"
#include "slt/text/vocabulary.h"
#include "slt/train/adam.h"
#include "slt/train/schedule.h"

namespace slt {

// One training pair: speech features or source ids, and target ids ending in EOS.
struct Example {
  std::string id;
  SourceSequence source;
  std::vector<int> target;
};

struct TrainConfig {
  std::size_t batch_size = 32;
  double dropout = 0.2;
  double symbol_dropout = 0.2;  // MT updates only
  std::size_t max_source_frames = 1400;
  std::size_t max_target_chars = 300;
  std::size_t eval_interval = 1000;
  std::size_t dev_max_len = 300;
  std::uint64_t seed = 1;
  AdamConfig adam;
};

/// Keeps the first max_source_frames frames and the first max_target_chars
/// target symbols (EOS re-appended). Text sources are left alone.
Example Truncate(const Example &example, const TrainConfig &config);

// Endless stream of mini-batches over one data set. Examples are bucketed by
// source length (sorted, then cut into consecutive batches) and the batch
// order is reshuffled at the start of every epoch.
class BatchStream {
 public:
  BatchStream(const std::vector<Example> *data, std::size_t batch_size, std::uint64_t seed);
  const std::vector<const Example *> &Next();
  std::size_t epoch() const { return epoch_; }

 private:
  std::vector<std::vector<const Example *>> batches_;
  std::vector<std::size_t> order_;
  std::size_t cursor_ = 0;
  std::size_t epoch_ = 0;
  std::mt19937_64 rng_;
};

struct StepResult {
  double mean_loss = 0.0;  // per target symbol
  std::size_t symbols = 0;
};

/// Forward with fresh dropout masks, backward, one Adam update of the
/// model's parameters. Gradients are averaged over the batch's target symbols.
StepResult TrainStep(Seq2SeqModel &model, const std::vector<const Example *> &batch, Task task,
                     const TrainConfig &config, Adam *adam, std::mt19937_64 *rng);

/// Greedy-decodes `dev` and scores it against the targets: BLEU for
/// translation tasks, WER for ASR.
double EvaluateDev(const Seq2SeqModel &model, const std::vector<Example> &dev,
                   const Vocabulary &target_vocab, Task task, std::size_t max_len);

struct TaskSetup {
  Task task;
  Seq2SeqModel *model;
  const std::vector<Example> *train;
  const std::vector<Example> *dev;
  const Vocabulary *target_vocab;
};

struct EvalRecord {
  std::size_t step;
  Task task;
  std::string metric;
  double value;
};

/// "step<TAB>task<TAB>metric<TAB>value".
std::string FormatLogLine(const EvalRecord &record);

struct TrainHooks {
  std::string checkpoint_dir;  // empty: no checkpoints
  std::ostream *log = nullptr;
  std::function<void(std::size_t step, Task task, const StepResult &)> on_update;
  /// Called after every dev evaluation of the primary task; true stops training.
  std::function<bool(const EvalRecord &)> stop;
};

struct TrainResult {
  std::vector<EvalRecord> evals;
  std::size_t updates = 0;
  std::size_t best_step = 0;
};

/// Runs `updates` updates. tasks[0] is the primary task whose model is
/// checkpointed. Without `multitask` only tasks[0] is trained; with it, the
/// first AST, ASR and MT entries are updated on the 3:1:1 schedule and
/// all of them are evaluated at each interval. Writes "ckpt-<step>" at each
/// evaluation and refreshes "ckpt-best" whenever the primary metric improves.
TrainResult Train(const std::vector<TaskSetup> &tasks, bool multitask, const TrainConfig &config,
                  std::size_t updates, const TrainHooks &hooks);

}  // namespace slt

#endif  // SLT_TRAIN_TRAINER_H_

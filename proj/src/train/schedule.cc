// src/train/schedule.cc
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

#include "slt/train/schedule.h"

#include "slt/base/error.h"

namespace slt {

std::string TaskName(Task task) {
  switch (task) {
    case Task::kAst: return "ast";
    case Task::kAsr: return "asr";
    case Task::kMt: return "mt";
  }
  return "?";
}

Task ParseTask(const std::string &name) {
  if (name == "ast") return Task::kAst;
  if (name == "asr") return Task::kAsr;
  if (name == "mt") return Task::kMt;
  throw ConfigError("unknown task '" + name + "' (expected asr, mt or ast)");
}

std::string TaskMetric(Task task) { return task == Task::kAsr ? "wer" : "bleu"; }
bool HigherIsBetter(Task task) { return task != Task::kAsr; }

Task ScheduleTask(std::size_t step) {
  static const Task kCycle[5] = {Task::kAst, Task::kAsr, Task::kAst, Task::kMt, Task::kAst};
  return kCycle[step % 5];
}

std::size_t SelectCheckpoint(const std::vector<std::pair<std::size_t, double>> &history,
                             bool higher_is_better) {
  if (history.empty()) throw ConfigError("no dev evaluations to select a checkpoint from");
  std::pair<std::size_t, double> best = history.front();
  for (const auto &entry : history) {
    const bool better = higher_is_better ? entry.second > best.second : entry.second < best.second;
    if (better || (entry.second == best.second && entry.first < best.first)) best = entry;
  }
  return best.first;
}

}  // namespace slt

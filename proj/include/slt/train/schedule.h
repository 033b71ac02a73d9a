// include/slt/train/schedule.h
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

#ifndef SLT_TRAIN_SCHEDULE_H_
#define SLT_TRAIN_SCHEDULE_H_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace slt {

enum class Task { kAst, kAsr, kMt };

std::string TaskName(Task task);  // "ast", "asr", "mt"
/// Throws ConfigError for unknown names.
Task ParseTask(const std::string &name);
/// BLEU for translation tasks, WER for recognition.
std::string TaskMetric(Task task);
bool HigherIsBetter(Task task);

/// Multi-task alternation: the cycle AST, ASR, AST, MT, AST (3:1:1).
Task ScheduleTask(std::size_t step);

/// Step with the best metric (max, or min when !higher_is_better); ties go to
/// the earliest step. Throws ConfigError on an empty history.
std::size_t SelectCheckpoint(const std::vector<std::pair<std::size_t, double>> &history,
                             bool higher_is_better);

}  // namespace slt

#endif  // SLT_TRAIN_SCHEDULE_H_

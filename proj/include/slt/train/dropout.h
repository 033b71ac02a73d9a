// include/slt/train/dropout.h
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

#ifndef SLT_TRAIN_DROPOUT_H_
#define SLT_TRAIN_DROPOUT_H_

#include <random>
#include <vector>

#include "slt/model/seq2seq.h"

namespace slt {

/// Inverted-dropout mask: each entry is 0 with probability `rate`, otherwise
/// 1/(1-rate). Throws ConfigError unless 0 <= rate < 1.
Tensor VariationalDropoutMask(std::size_t size, double rate, std::mt19937_64 *rng);

/// One mask per application point of `config`, drawn in a fixed order. With
/// rate 0 every mask is left empty (no masking).
DropoutMasks MakeDropoutMasks(const ModelConfig &config, double rate, std::mt19937_64 *rng);

/// Replaces each non-reserved id by UNK with probability p.
std::vector<int> SymbolDropout(const std::vector<int> &ids, double p, std::mt19937_64 *rng);

}  // namespace slt

#endif  // SLT_TRAIN_DROPOUT_H_

// include/slt/train/transfer.h
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

#ifndef SLT_TRAIN_TRANSFER_H_
#define SLT_TRAIN_TRANSFER_H_

#include <string>
#include <vector>

#include "slt/tensor/parameters.h"

namespace slt {

/// Copies every AST parameter under "speech_encoder/" from the ASR set and
/// every one under "decoder/" from the MT set, by name. Other AST parameters
/// keep their values. All offenders (missing names, shape mismatches) are
/// collected and reported in one TransferError before anything is copied.
/// Returns the copied names.
std::vector<std::string> InitFromPretrained(ParameterSet *ast, const ParameterSet &asr,
                                            const ParameterSet &mt);

/// Makes every parameter of `dst` under `prefix` alias the same-named
/// parameter of `src` (shapes must agree).
void ShareParameters(ParameterSet *dst, const ParameterSet &src, const std::string &prefix);

}  // namespace slt

#endif  // SLT_TRAIN_TRANSFER_H_

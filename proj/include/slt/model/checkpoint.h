// include/slt/model/checkpoint.h
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

#ifndef SLT_MODEL_CHECKPOINT_H_
#define SLT_MODEL_CHECKPOINT_H_

#include <string>

#include "slt/model/seq2seq.h"
#include "slt/tensor/parameters.h"

namespace slt {

// Binary parameter file: "SLTC", u32 version, u32 count, then per parameter
// (in name order) a length-prefixed UTF-8 name, u32 rank, u32 extents and
// little-endian 32-bit floats. Values are rounded to float on save.

constexpr std::uint32_t kCheckpointVersion = 1;

void SaveParameters(const std::string &path, const ParameterSet &params);
ParameterSet LoadParameters(const std::string &path);

inline void SaveModel(const std::string &path, const Seq2SeqModel &model) {
  SaveParameters(path, model.params());
}
inline Seq2SeqModel LoadModel(const std::string &path) {
  return Seq2SeqModel::FromParameters(LoadParameters(path));
}

/// Rounds every parameter to 32-bit precision in place, so that an in-memory
/// model matches what a save/load round trip would produce.
void RoundToStoragePrecision(ParameterSet *params);

}  // namespace slt

#endif  // SLT_MODEL_CHECKPOINT_H_

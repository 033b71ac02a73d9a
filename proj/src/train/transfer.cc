// src/train/transfer.cc
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

#include "slt/train/transfer.h"

#include "slt/base/error.h"

namespace slt {

namespace {

void CheckSource(const ParameterSet &ast, const ParameterSet &src, const std::string &prefix,
                 const char *label, std::vector<std::string> *problems,
                 std::vector<std::pair<std::string, const ParameterSet *>> *plan) {
  for (const std::string &name : ast.Names()) {
    if (!name.starts_with(prefix)) continue;
    if (!src.Has(name)) {
      problems->push_back(name + " (missing from " + label + " checkpoint)");
      continue;
    }
    const Shape &want = ast.Get(name).value.shape();
    const Shape &have = src.Get(name).value.shape();
    if (want != have) {
      problems->push_back(name + " (" + label + " shape " + ShapeString(have) + ", expected " +
                          ShapeString(want) + ")");
      continue;
    }
    plan->emplace_back(name, &src);
  }
}

}  // namespace

std::vector<std::string> InitFromPretrained(ParameterSet *ast, const ParameterSet &asr,
                                            const ParameterSet &mt) {
  std::vector<std::string> problems;
  std::vector<std::pair<std::string, const ParameterSet *>> plan;
  CheckSource(*ast, asr, "speech_encoder/", "ASR", &problems, &plan);
  CheckSource(*ast, mt, "decoder/", "MT", &problems, &plan);
  if (!problems.empty()) {
    std::string msg = "cannot initialise from pre-trained models:";
    for (const std::string &p : problems) msg += "\n  " + p;
    throw TransferError(msg);
  }
  std::vector<std::string> copied;
  for (const auto &[name, src] : plan) {
    ast->Get(name).value = src->Get(name).value;
    copied.push_back(name);
  }
  return copied;
}

void ShareParameters(ParameterSet *dst, const ParameterSet &src, const std::string &prefix) {
  for (const std::string &name : dst->Names()) {
    if (!name.starts_with(prefix)) continue;
    if (!src.Has(name) || src.Get(name).value.shape() != dst->Get(name).value.shape())
      throw TransferError("cannot share " + name + ": missing or differently shaped in source");
    dst->Share(name, src.Shared(name));
  }
}

}  // namespace slt

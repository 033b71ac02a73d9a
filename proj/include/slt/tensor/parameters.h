// include/slt/tensor/parameters.h
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

#ifndef SLT_TENSOR_PARAMETERS_H_
#define SLT_TENSOR_PARAMETERS_H_

#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "slt/tensor/tensor.h"

namespace slt {

struct Parameter {
  std::string name;
  Tensor value;
  Tensor grad;  // same shape as value; accumulated by Graph::Backward
};

// Named, shaped parameter store. Entries are held by shared_ptr so that two
// models (e.g. the AST and ASR halves of a multi-task setup) can point at the
// same underlying parameter.
class ParameterSet {
 public:
  /// Adds a zero-initialised parameter. Throws if the name exists.
  Parameter &Add(const std::string &name, const Shape &shape);

  bool Has(const std::string &name) const { return params_.count(name) != 0; }
  Parameter &Get(const std::string &name);
  const Parameter &Get(const std::string &name) const;
  std::shared_ptr<Parameter> Shared(const std::string &name) const;
  /// Replaces (or inserts) the entry so it aliases `param`.
  void Share(const std::string &name, std::shared_ptr<Parameter> param);

  /// Names in sorted order; iteration over a ParameterSet is deterministic.
  std::vector<std::string> Names() const;
  std::vector<Parameter *> All();
  std::size_t size() const { return params_.size(); }
  std::size_t NumScalars() const;

  void ZeroGrad();

 private:
  std::map<std::string, std::shared_ptr<Parameter>> params_;
};

/// Uniform in [-r, r], r = sqrt(6 / (fan_in + fan_out)).
void GlorotUniform(Tensor *t, std::size_t fan_in, std::size_t fan_out,
                   std::mt19937_64 *rng);

}  // namespace slt

#endif  // SLT_TENSOR_PARAMETERS_H_

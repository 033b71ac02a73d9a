// src/tensor/parameters.cc
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

#include "slt/tensor/parameters.h"

#include <cmath>

#include "slt/base/error.h"

namespace slt {

Parameter &ParameterSet::Add(const std::string &name, const Shape &shape) {
  if (Has(name)) throw Error("duplicate parameter name: " + name);
  auto p = std::make_shared<Parameter>();
  p->name = name;
  p->value = Tensor(shape);
  p->grad = Tensor(shape);
  Parameter &ref = *p;
  params_.emplace(name, std::move(p));
  return ref;
}

Parameter &ParameterSet::Get(const std::string &name) {
  auto it = params_.find(name);
  if (it == params_.end()) throw Error("unknown parameter: " + name);
  return *it->second;
}

const Parameter &ParameterSet::Get(const std::string &name) const {
  auto it = params_.find(name);
  if (it == params_.end()) throw Error("unknown parameter: " + name);
  return *it->second;
}

std::shared_ptr<Parameter> ParameterSet::Shared(const std::string &name) const {
  auto it = params_.find(name);
  if (it == params_.end()) throw Error("unknown parameter: " + name);
  return it->second;
}

void ParameterSet::Share(const std::string &name, std::shared_ptr<Parameter> param) {
  params_[name] = std::move(param);
}

std::vector<std::string> ParameterSet::Names() const {
  std::vector<std::string> names;
  names.reserve(params_.size());
  for (const auto &kv : params_) names.push_back(kv.first);
  return names;
}

std::vector<Parameter *> ParameterSet::All() {
  std::vector<Parameter *> out;
  out.reserve(params_.size());
  for (auto &kv : params_) out.push_back(kv.second.get());
  return out;
}

std::size_t ParameterSet::NumScalars() const {
  std::size_t n = 0;
  for (const auto &kv : params_) n += kv.second->value.size();
  return n;
}

void ParameterSet::ZeroGrad() {
  for (auto &kv : params_) kv.second->grad.Fill(0.0);
}

void GlorotUniform(Tensor *t, std::size_t fan_in, std::size_t fan_out,
                   std::mt19937_64 *rng) {
  const double r = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  std::uniform_real_distribution<double> dist(-r, r);
  for (double &v : t->values()) v = dist(*rng);
}

}  // namespace slt

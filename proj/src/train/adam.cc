// src/train/adam.cc
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

#include "slt/train/adam.h"

#include <cmath>

#include "slt/base/error.h"

namespace slt {

void Adam::Step(const std::vector<Parameter *> &params) {
  for (const Parameter *p : params)
    if (!p->grad.AllFinite()) throw NumericError("non-finite gradient for parameter " + p->name);

  const double b1 = config_.beta1, b2 = config_.beta2;
  for (Parameter *p : params) {
    Moments &s = state_[p];
    if (s.m.empty()) {
      s.m = Tensor(p->value.shape());
      s.v = Tensor(p->value.shape());
    }
    ++s.t;
    const double c1 = 1.0 - std::pow(b1, static_cast<double>(s.t));
    const double c2 = 1.0 - std::pow(b2, static_cast<double>(s.t));
    for (std::size_t i = 0; i < p->value.size(); ++i) {
      const double g = p->grad[i];
      s.m[i] = b1 * s.m[i] + (1.0 - b1) * g;
      s.v[i] = b2 * s.v[i] + (1.0 - b2) * g * g;
      const double m_hat = s.m[i] / c1, v_hat = s.v[i] / c2;
      p->value[i] -= config_.learning_rate * m_hat / (std::sqrt(v_hat) + config_.epsilon);
    }
  }
}

std::size_t Adam::steps(const Parameter *p) const {
  auto it = state_.find(p);
  return it == state_.end() ? 0 : it->second.t;
}

}  // namespace slt

// src/tensor/grad-check.cc
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

#include "slt/tensor/grad-check.h"

#include <algorithm>
#include <cmath>

#include "slt/base/error.h"

namespace slt {

namespace {

double Evaluate(const LossBuilder &loss) {
  Graph g(false);
  const double v = loss(g).value().item();
  if (!std::isfinite(v)) throw NumericError("grad check: loss is not finite");
  return v;
}

}  // namespace

GradCheckResult GradCheck(const LossBuilder &loss, const std::vector<Parameter *> &params,
                          double step, Stencil stencil) {
  for (Parameter *p : params) p->grad.Fill(0.0);
  {
    Graph g;
    Var l = loss(g);
    if (!std::isfinite(l.value().item())) throw NumericError("grad check: loss is not finite");
    g.Backward(l);
  }

  GradCheckResult result;
  for (Parameter *p : params) {
    for (std::size_t i = 0; i < p->value.size(); ++i) {
      const double saved = p->value[i];
      auto at = [&](double offset) {
        p->value[i] = saved + offset;
        return Evaluate(loss);
      };
      double numeric = (at(step) - at(-step)) / (2.0 * step);
      if (stencil == Stencil::kFivePoint)
        numeric = (4.0 * numeric - (at(2 * step) - at(-2 * step)) / (4.0 * step)) / 3.0;
      p->value[i] = saved;

      const double analytic = p->grad[i];
      const double denom = std::max({std::fabs(analytic), std::fabs(numeric), 1e-8});
      const double rel = std::fabs(analytic - numeric) / denom;
      ++result.checked;
      if (rel > result.max_relative_error) {
        result.max_relative_error = rel;
        result.worst_parameter = p->name;
        result.worst_index = i;
        result.analytic = analytic;
        result.numeric = numeric;
      }
    }
  }
  return result;
}

}  // namespace slt

// include/slt/tensor/grad-check.h
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

#ifndef SLT_TENSOR_GRAD_CHECK_H_
#define SLT_TENSOR_GRAD_CHECK_H_

#include <functional>
#include <string>
#include <vector>

#include "slt/tensor/graph.h"
#include "slt/tensor/parameters.h"

namespace slt {

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::string worst_parameter;
  std::size_t worst_index = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  std::size_t checked = 0;
};

/// Builds a scalar loss on the given graph from the current parameter values.
using LossBuilder = std::function<Var(Graph &)>;

/// Central-difference stencils: the classic (f(x+h) - f(x-h)) / 2h, or the
/// fourth-order five-point rule, which deep compositions need at moderate h.
enum class Stencil { kThreePoint, kFivePoint };

// Compares reverse-mode gradients of `loss` with central differences of step
// `step` over every entry of `params`:
//   max |analytic - numeric| / max(|analytic|, |numeric|, 1e-8).
// Parameter values are restored afterwards; gradients are left holding the
// analytic result. Throws NumericError if the loss is non-finite at a probe.
GradCheckResult GradCheck(const LossBuilder &loss, const std::vector<Parameter *> &params,
                          double step, Stencil stencil = Stencil::kThreePoint);

}  // namespace slt

#endif  // SLT_TENSOR_GRAD_CHECK_H_

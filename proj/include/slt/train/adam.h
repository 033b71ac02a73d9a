// include/slt/train/adam.h
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

#ifndef SLT_TRAIN_ADAM_H_
#define SLT_TRAIN_ADAM_H_

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "slt/tensor/parameters.h"

namespace slt {

struct AdamConfig {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Bias-corrected Adam. Moments and the step counter are kept per parameter
// object, so a parameter aliased by several models (multi-task training)
// has a single state no matter which model updates it, and a parameter that
// sits out an update does not advance its counter.
class Adam {
 public:
  explicit Adam(AdamConfig config = {}) : config_(config) {}

  /// One update of `params` from their accumulated gradients. Throws
  /// NumericError naming the first parameter with a non-finite gradient,
  /// before anything is modified.
  void Step(const std::vector<Parameter *> &params);

  /// Updates applied to `p` so far (0 if never updated).
  std::size_t steps(const Parameter *p) const;
  const AdamConfig &config() const { return config_; }

 private:
  struct Moments {
    Tensor m, v;
    std::size_t t = 0;
  };
  AdamConfig config_;
  std::unordered_map<const Parameter *, Moments> state_;
};

}  // namespace slt

#endif  // SLT_TRAIN_ADAM_H_

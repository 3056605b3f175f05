// Copyright 2026 The DRLR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DRLR_NN_ADAM_H_
#define DRLR_NN_ADAM_H_

#include <cstdint>

#include "drlr/nn/mlp.h"

namespace drlr::nn {

struct AdamState {
  std::int64_t step_count = 0;
  Grad first_moment;
  Grad second_moment;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  static AdamState For(const MlpParams& params);
};

// One bias-corrected Adam step. Throws std::invalid_argument naming the layer
// when the gradient holds a non-finite entry; params and state are untouched
// in that case.
void AdamStep(const Grad& grad, double lr, MlpParams* params, AdamState* state);

// Adam for a single scalar parameter (used for the entropy temperature).
struct ScalarAdam {
  std::int64_t step_count = 0;
  double first_moment = 0.0;
  double second_moment = 0.0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  double Step(double value, double grad, double lr);
};

}  // namespace drlr::nn

#endif  // DRLR_NN_ADAM_H_

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

#include "drlr/nn/adam.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace drlr::nn {

AdamState AdamState::For(const MlpParams& params) {
  AdamState state;
  state.first_moment = Grad::ZerosLike(params);
  state.second_moment = Grad::ZerosLike(params);
  return state;
}

void AdamStep(const Grad& grad, double lr, MlpParams* params,
              AdamState* state) {
  const int n = params->num_layers();
  if (static_cast<int>(grad.weights.size()) != n ||
      static_cast<int>(state->first_moment.weights.size()) != n) {
    throw std::invalid_argument("AdamStep: shape mismatch");
  }
  for (int k = 0; k < n; ++k) {
    if (grad.weights[k].rows() != params->weights[k].rows() ||
        grad.weights[k].cols() != params->weights[k].cols() ||
        grad.biases[k].size() != params->biases[k].size()) {
      throw std::invalid_argument("AdamStep: shape mismatch in layer " +
                                  std::to_string(k));
    }
    if (!grad.weights[k].allFinite() || !grad.biases[k].allFinite()) {
      throw std::invalid_argument("AdamStep: non-finite gradient in layer " +
                                  std::to_string(k));
    }
  }
  state->step_count += 1;
  const double b1 = state->beta1;
  const double b2 = state->beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(state->step_count));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(state->step_count));
  const double eps = state->epsilon;
  auto update = [&](auto& p, auto& m, auto& v, const auto& g) {
    m = b1 * m + (1.0 - b1) * g;
    v = b2 * v + (1.0 - b2) * g.cwiseProduct(g);
    p.array() -= lr * (m.array() / c1) /
                 ((v.array() / c2).sqrt() + eps);
  };
  for (int k = 0; k < n; ++k) {
    update(params->weights[k], state->first_moment.weights[k],
           state->second_moment.weights[k], grad.weights[k]);
    update(params->biases[k], state->first_moment.biases[k],
           state->second_moment.biases[k], grad.biases[k]);
  }
}

double ScalarAdam::Step(double value, double grad, double lr) {
  if (!std::isfinite(grad)) {
    throw std::invalid_argument("ScalarAdam: non-finite gradient");
  }
  step_count += 1;
  first_moment = beta1 * first_moment + (1.0 - beta1) * grad;
  second_moment = beta2 * second_moment + (1.0 - beta2) * grad * grad;
  const double m_hat =
      first_moment / (1.0 - std::pow(beta1, static_cast<double>(step_count)));
  const double v_hat =
      second_moment / (1.0 - std::pow(beta2, static_cast<double>(step_count)));
  return value - lr * m_hat / (std::sqrt(v_hat) + epsilon);
}

}  // namespace drlr::nn

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

#include "drlr/envs/env.h"

#include <stdexcept>

namespace drlr::envs {

const char* RewardModeName(RewardMode mode) {
  return mode == RewardMode::kDense ? "dense" : "sparse";
}

bool Env::ClipAction(const Eigen::VectorXd& action, int action_dim,
                     Eigen::VectorXd* clipped) {
  if (action.size() != action_dim) {
    throw std::invalid_argument("action has wrong dimension");
  }
  if (!action.allFinite()) throw std::invalid_argument("non-finite action");
  *clipped = action.cwiseMax(-1.0).cwiseMin(1.0);
  return (*clipped - action).cwiseAbs().maxCoeff() > 0.0;
}

}  // namespace drlr::envs

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

#include "drlr/envs/point_reach.h"

namespace drlr::envs {

PointReach::PointReach(RewardMode mode) {
  spec_.name = "point_reach";
  spec_.state_dim = 4;
  spec_.action_dim = 2;
  spec_.max_episode_steps = kMaxSteps;
  spec_.reward_mode = mode;
}

Eigen::VectorXd PointReach::Reset(Rng& rng) {
  state_.setZero();
  for (int i = 0; i < 2; ++i) {
    const double mag = Uniform(rng, 0.5, 1.0);
    state_(i) = Uniform(rng, 0.0, 1.0) < 0.5 ? -mag : mag;
  }
  steps_ = 0;
  return state_;
}

void PointReach::SetState(const Eigen::Vector4d& state) {
  state_ = state;
  steps_ = 0;
}

StepResult PointReach::Step(const Eigen::VectorXd& action) {
  Eigen::VectorXd a;
  const bool clipped = ClipAction(action, 2, &a);
  for (int i = 0; i < 2; ++i) {
    state_(2 + i) += kDt * (a(i) - kDamping * state_(2 + i));
    state_(i) += kDt * state_(2 + i);
  }
  ++steps_;
  const double dist = state_.head<2>().norm();
  StepResult r;
  r.observation = state_;
  r.success = dist < kGoalRadius;
  r.terminal = r.success;
  r.truncated = !r.terminal && steps_ >= kMaxSteps;
  if (spec_.reward_mode == RewardMode::kDense) {
    r.reward = -dist;
  } else {
    r.reward = r.success ? 1.0 : 0.0;
  }
  r.info["distance"] = dist;
  r.info["clipped"] = clipped ? 1.0 : 0.0;
  return r;
}

std::unique_ptr<Env> PointReach::Clone() const {
  return std::make_unique<PointReach>(*this);
}

}  // namespace drlr::envs

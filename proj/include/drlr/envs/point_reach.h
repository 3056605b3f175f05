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

#ifndef DRLR_ENVS_POINT_REACH_H_
#define DRLR_ENVS_POINT_REACH_H_

#include "drlr/envs/env.h"

namespace drlr::envs {

// 2-D point mass pushed toward the origin. State (x, y, vx, vy), action is a
// force in [-1, 1]^2. Integration per step:
//   v <- v + dt (a - damping v)
//   p <- p + dt v
// Reaching ||p|| < goal_radius ends the episode (success). Dense reward is
// -||p|| after the step; sparse reward is 1 on reaching the goal, else 0.
class PointReach : public Env {
 public:
  static constexpr double kDt = 0.05;
  static constexpr double kDamping = 0.1;
  static constexpr double kGoalRadius = 0.05;
  static constexpr int kMaxSteps = 100;

  explicit PointReach(RewardMode mode);

  const EnvSpec& spec() const override { return spec_; }
  Eigen::VectorXd Reset(Rng& rng) override;
  StepResult Step(const Eigen::VectorXd& action) override;
  Eigen::VectorXd Observe() const override { return state_; }
  std::unique_ptr<Env> Clone() const override;

  // Test hook: overwrite the physical state and restart the step counter.
  void SetState(const Eigen::Vector4d& state);

 private:
  EnvSpec spec_;
  Eigen::VectorXd state_ = Eigen::VectorXd::Zero(4);
};

}  // namespace drlr::envs

#endif  // DRLR_ENVS_POINT_REACH_H_

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

#include "drlr/envs/arm_drawer.h"

#include <algorithm>
#include <cmath>

namespace drlr::envs {

ArmDrawer::ArmDrawer(RewardMode mode) {
  spec_.name = "arm_drawer";
  spec_.state_dim = 2 * kJoints + 2;
  spec_.action_dim = kJoints;
  spec_.max_episode_steps = kMaxSteps;
  spec_.reward_mode = mode;
}

double ArmDrawer::distance_weight() const {
  return spec_.reward_mode == RewardMode::kDense ? kDistanceWeight : 0.0;
}

Eigen::VectorXd ArmDrawer::HomeConfiguration() {
  Eigen::VectorXd q(kJoints);
  q << 0.9, -0.4, -0.4, -0.4, -0.4;
  return q;
}

Eigen::Vector2d ArmDrawer::EndEffector(const Eigen::VectorXd& q) {
  Eigen::Vector2d p = Eigen::Vector2d::Zero();
  double angle = 0.0;
  for (int i = 0; i < kJoints; ++i) {
    angle += q(i);
    p += Eigen::Vector2d(std::cos(angle), std::sin(angle));
  }
  return p;
}

Eigen::Matrix<double, 2, ArmDrawer::kJoints> ArmDrawer::Jacobian(
    const Eigen::VectorXd& q) {
  // Column i sums the contributions of links i..4.
  Eigen::Matrix<double, 2, kJoints> j;
  double angle = 0.0;
  std::array<double, kJoints> c{};
  std::array<double, kJoints> s{};
  for (int i = 0; i < kJoints; ++i) {
    angle += q(i);
    c[i] = std::cos(angle);
    s[i] = std::sin(angle);
  }
  double sx = 0.0;
  double sy = 0.0;
  for (int i = kJoints - 1; i >= 0; --i) {
    sx += -s[i];
    sy += c[i];
    j(0, i) = sx;
    j(1, i) = sy;
  }
  return j;
}

Eigen::Vector2d ArmDrawer::Handle(double extension) {
  return {kHandleX - extension, kHandleY};
}

double ArmDrawer::HandleDistance() const {
  return (EndEffector(q_) - Handle(extension_)).norm();
}

Eigen::VectorXd ArmDrawer::Reset(Rng& rng) {
  q_ = HomeConfiguration();
  for (int i = 0; i < kJoints; ++i) q_(i) += Uniform(rng, -0.05, 0.05);
  qd_.setZero();
  extension_ = 0.0;
  steps_ = 0;
  return Observe();
}

void ArmDrawer::SetState(const Eigen::VectorXd& q, const Eigen::VectorXd& qd,
                         double extension) {
  q_ = q;
  qd_ = qd;
  extension_ = extension;
  steps_ = 0;
}

Eigen::VectorXd ArmDrawer::Observe() const {
  Eigen::VectorXd obs(spec_.state_dim);
  obs << q_, qd_, extension_, HandleDistance();
  return obs;
}

StepResult ArmDrawer::Step(const Eigen::VectorXd& action) {
  Eigen::VectorXd a;
  const bool clipped = ClipAction(action, kJoints, &a);
  qd_ += kDt * (kTorqueGain * a - kJointDamping * qd_);
  q_ += kDt * qd_;
  ++steps_;

  const double before = extension_;
  const Eigen::Vector2d ee = EndEffector(q_);
  if ((ee - Handle(extension_)).norm() < kGraspRadius) {
    extension_ = std::clamp(std::max(extension_, kHandleX - ee.x()), 0.0,
                            kMaxExtension);
  }
  const double dist = HandleDistance();

  StepResult r;
  r.observation = Observe();
  r.success = extension_ >= kOpenExtension;
  r.terminal = r.success;
  r.truncated = !r.terminal && steps_ >= kMaxSteps;
  r.reward = -distance_weight() * dist + kOpenWeight * (extension_ - before) +
             (r.success ? kBonus : 0.0);
  r.info["distance"] = dist;
  r.info["extension"] = extension_;
  r.info["clipped"] = clipped ? 1.0 : 0.0;
  return r;
}

std::unique_ptr<Env> ArmDrawer::Clone() const {
  return std::make_unique<ArmDrawer>(*this);
}

}  // namespace drlr::envs

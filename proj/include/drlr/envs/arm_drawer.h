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

#ifndef DRLR_ENVS_ARM_DRAWER_H_
#define DRLR_ENVS_ARM_DRAWER_H_

#include <array>

#include <Eigen/Core>

#include "drlr/envs/env.h"

namespace drlr::envs {

// Planar 5-joint arm with unit links and a drawer handle. Joints are
// torque-driven with viscous damping and no gravity:
//   qdd = torque_gain * a - joint_damping * qd
// The drawer slides along -x: while the end-effector is within kGraspRadius of
// the handle, the handle follows the end-effector's x toward the base.
//
// Observation: 5 joint angles, 5 joint velocities, drawer extension, distance
// from end-effector to handle (12 values).
// Reward: -w_d * distance + w_o * (extension increase) + kBonus on reaching
// kOpenExtension, which also ends the episode. Sparse mode sets w_d = 0.
class ArmDrawer : public Env {
 public:
  static constexpr int kJoints = 5;
  static constexpr double kDt = 0.05;
  static constexpr double kTorqueGain = 2.0;
  static constexpr double kJointDamping = 2.0;
  static constexpr double kGraspRadius = 0.1;
  static constexpr double kOpenExtension = 0.3;
  static constexpr double kMaxExtension = 0.5;
  static constexpr double kBonus = 10.0;
  static constexpr double kDistanceWeight = 0.1;
  static constexpr double kOpenWeight = 10.0;
  static constexpr double kHandleX = 3.4;
  static constexpr double kHandleY = 1.2;
  static constexpr int kMaxSteps = 32;

  explicit ArmDrawer(RewardMode mode);

  const EnvSpec& spec() const override { return spec_; }
  Eigen::VectorXd Reset(Rng& rng) override;
  StepResult Step(const Eigen::VectorXd& action) override;
  Eigen::VectorXd Observe() const override;
  std::unique_ptr<Env> Clone() const override;

  double distance_weight() const;
  static Eigen::Vector2d EndEffector(const Eigen::VectorXd& q);
  // d end_effector / d q, shape (2, 5).
  static Eigen::Matrix<double, 2, kJoints> Jacobian(const Eigen::VectorXd& q);
  static Eigen::Vector2d Handle(double extension);
  static Eigen::VectorXd HomeConfiguration();

  // Test hook.
  void SetState(const Eigen::VectorXd& q, const Eigen::VectorXd& qd,
                double extension);
  double extension() const { return extension_; }

 private:
  double HandleDistance() const;

  EnvSpec spec_;
  Eigen::VectorXd q_ = Eigen::VectorXd::Zero(kJoints);
  Eigen::VectorXd qd_ = Eigen::VectorXd::Zero(kJoints);
  double extension_ = 0.0;
};

}  // namespace drlr::envs

#endif  // DRLR_ENVS_ARM_DRAWER_H_

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

#ifndef DRLR_ENVS_SCOOP_LOADER_H_
#define DRLR_ENVS_SCOOP_LOADER_H_

#include <vector>

#include <Eigen/Core>

#include "drlr/admittance/controller.h"
#include "drlr/admittance/dynamics.h"
#include "drlr/envs/env.h"

namespace drlr::envs {

enum class AdmittanceVariant { kTwoSided, kOneSided };

struct ScoopLoaderParams {
  admittance::JointDynamics dynamics;
  admittance::TrackingGains tracking;
  // Applied to the boom joint during penetration.
  admittance::AdmittanceGains admittance{1.0, 40.0, 400.0, 30.0};
  AdmittanceVariant variant = AdmittanceVariant::kTwoSided;
  bool one_sided_zero_velocity = false;

  double control_dt = 0.1;  // 10 Hz decisions
  int substeps = 100;       // 1 ms physics
  double pivot_height = 0.5;
  double advance_speed = 0.2;  // loader forward speed in penetration, m/s

  // Pile: flat floor at y = 0, slope rising from x = pile_face.
  double pile_face = 1.45;
  double pile_slope = 0.57735026918962573;  // tan 30 deg
  double pile_height = 1.2;
  double stiffness_min = 60.0;   // resistance torque per metre of depth
  double stiffness_max = 120.0;
  double ground_stiffness = 2000.0;
  double volume_max = 0.12;

  double torque_scale = 60.0;  // tau_d = action * scale; obs tau_e / scale
  double q_f_limit = 0.5;

  int max_episode_steps = 150;
  int reward_offset = 50;  // sparse reward at step T - reward_offset
};

// Boom/bucket loader scooping from a pile. Observation
// [q1, q2, L_a, tau_e / torque_scale clipped to [-1, 1]], action
// [q_d1, q_d2, tau_d] in [-1, 1]. Normalized references map to joint angles
// linearly: q1 spans [-0.6, 0.8] over [-1, 1], q2 = 0.5 - 0.9 * q_d2 (so
// q_d2 = -1 is the curled bucket).
//
// A step is in penetration (P1) exactly when q_d2 > -0.5: the loader advances
// and the boom reference is offset by the admittance filter. Otherwise (P2/P3)
// the loader stands still and the joints track the references only.
//
// tau_e on the boom is -stiffness * depth inside the pile (opposing) plus a
// positive floor reaction when the bucket tip goes below y = 0. Scooped volume
// grows by depth * advance while penetrating, capped at volume_max.
//
// Sparse reward, at step T - reward_offset only: R_f + R_e, or -10 when
// R_f < 0.5 or R_e < 0.5 (Fail). R_f = V / V_max and
// R_e = 1 - d / d_max with d the joint-space distance to the end pose
// (q_d = (1, -1)). Dense mode pays R_f + R_e every step.
class ScoopLoader : public Env {
 public:
  explicit ScoopLoader(RewardMode mode = RewardMode::kSparse,
                       ScoopLoaderParams params = {});

  const EnvSpec& spec() const override { return spec_; }
  Eigen::VectorXd Reset(Rng& rng) override;
  StepResult Step(const Eigen::VectorXd& action) override;
  Eigen::VectorXd Observe() const override;
  std::unique_ptr<Env> Clone() const override;

  const ScoopLoaderParams& params() const { return params_; }
  int reward_step() const;
  static bool IsPenetrationPhase(double q_d2) { return q_d2 > -0.5; }
  Eigen::Vector2d ReferenceFromAction(double q_d1, double q_d2) const;
  Eigen::Vector2d start_configuration() const { return start_q_; }
  Eigen::Vector2d end_configuration() const;
  double FillReward() const;
  double EndReward() const;

  // Test hooks.
  void SetVolume(double volume) { volume_ = volume; }
  void SetJoints(const Eigen::Vector2d& q) { joints_.q = q; joints_.qd.setZero(); }
  double stiffness() const { return stiffness_; }
  double volume() const { return volume_; }
  int branch_crossings() const { return branch_crossings_; }

  void RecordTrajectory(bool on) { record_ = on; }
  const std::vector<admittance::TrajectoryRow>& trajectory() const {
    return trajectory_;
  }

 private:
  double TauE(const Eigen::Vector2d& q, double advance, double* depth) const;

  EnvSpec spec_;
  ScoopLoaderParams params_;
  admittance::JointState joints_;
  admittance::AdmittanceState filter_;
  Eigen::Vector2d start_q_{-0.5, 0.5};
  double advance_ = 0.0;
  double volume_ = 0.0;
  double stiffness_ = 0.0;
  double tau_e_ = 0.0;
  bool last_saturated_ = false;
  int branch_crossings_ = 0;
  bool record_ = false;
  std::vector<admittance::TrajectoryRow> trajectory_;
};

}  // namespace drlr::envs

#endif  // DRLR_ENVS_SCOOP_LOADER_H_

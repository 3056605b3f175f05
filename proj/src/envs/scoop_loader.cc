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

#include "drlr/envs/scoop_loader.h"

#include <algorithm>
#include <cmath>

namespace drlr::envs {

ScoopLoader::ScoopLoader(RewardMode mode, ScoopLoaderParams params)
    : params_(std::move(params)) {
  admittance::Validate(params_.admittance);
  spec_.name = "scoop_loader";
  spec_.state_dim = 4;
  spec_.action_dim = 3;
  spec_.max_episode_steps = params_.max_episode_steps;
  spec_.reward_mode = mode;
}

int ScoopLoader::reward_step() const {
  return params_.max_episode_steps - params_.reward_offset;
}

Eigen::Vector2d ScoopLoader::ReferenceFromAction(double q_d1,
                                                 double q_d2) const {
  return {-0.6 + 0.5 * (q_d1 + 1.0) * 1.4, 0.5 - 0.9 * q_d2};
}

Eigen::Vector2d ScoopLoader::end_configuration() const {
  return ReferenceFromAction(1.0, -1.0);
}

double ScoopLoader::FillReward() const {
  return volume_ / params_.volume_max;
}

double ScoopLoader::EndReward() const {
  const Eigen::Vector2d end = end_configuration();
  const double d = (joints_.q - end).norm();
  const double d_max = (start_q_ - end).norm();
  return 1.0 - d / d_max;
}

Eigen::VectorXd ScoopLoader::Reset(Rng& rng) {
  stiffness_ = Uniform(rng, params_.stiffness_min, params_.stiffness_max);
  start_q_ = Eigen::Vector2d(-0.5 + Uniform(rng, -0.02, 0.02),
                             0.5 + Uniform(rng, -0.02, 0.02));
  joints_.q = start_q_;
  joints_.qd.setZero();
  filter_ = {};
  advance_ = 0.0;
  volume_ = 0.0;
  last_saturated_ = false;
  branch_crossings_ = 0;
  steps_ = 0;
  trajectory_.clear();
  double depth = 0.0;
  tau_e_ = TauE(joints_.q, advance_, &depth);
  return Observe();
}

double ScoopLoader::TauE(const Eigen::Vector2d& q, double advance,
                         double* depth) const {
  const Eigen::Vector2d tip = params_.dynamics.TipPosition(q);
  const double x = advance + tip.x();
  const double y = params_.pivot_height + tip.y();
  const double surface = std::clamp(
      params_.pile_slope * (x - params_.pile_face), 0.0, params_.pile_height);
  *depth = std::max(0.0, surface - std::max(y, 0.0));
  const double floor = std::max(0.0, -y);
  return -stiffness_ * *depth + params_.ground_stiffness * floor;
}

Eigen::VectorXd ScoopLoader::Observe() const {
  Eigen::VectorXd obs(4);
  obs << joints_.q(0), joints_.q(1), advance_,
      std::clamp(tau_e_ / params_.torque_scale, -1.0, 1.0);
  return obs;
}

StepResult ScoopLoader::Step(const Eigen::VectorXd& action) {
  Eigen::VectorXd a;
  const bool clipped = ClipAction(action, 3, &a);
  const bool penetrating = IsPenetrationPhase(a(1));
  const Eigen::Vector2d q_ref = ReferenceFromAction(a(0), a(1));
  const Eigen::Vector2d tau_d(a(2) * params_.torque_scale, 0.0);
  const double h = params_.control_dt / params_.substeps;
  int saturated_substeps = 0;

  if (!penetrating) filter_ = {};
  for (int k = 0; k < params_.substeps; ++k) {
    double depth = 0.0;
    const double tau_e = TauE(joints_.q, advance_, &depth);
    const Eigen::Vector2d tau_e_vec(tau_e, 0.0);
    Eigen::Vector2d offset = Eigen::Vector2d::Zero();
    if (penetrating) {
      const admittance::AdmittanceOutput out =
          params_.variant == AdmittanceVariant::kTwoSided
              ? admittance::AdmittanceTwoSided(filter_, params_.admittance,
                                               tau_d, tau_e_vec, h)
              : admittance::AdmittanceOneSided(
                    filter_, params_.admittance, tau_e_vec, h,
                    params_.one_sided_zero_velocity);
      filter_ = out.state;
      filter_.q_f = filter_.q_f.cwiseMax(-params_.q_f_limit)
                        .cwiseMin(params_.q_f_limit);
      const bool sat = out.saturated(0) != 0;
      if (sat != last_saturated_) ++branch_crossings_;
      last_saturated_ = sat;
      saturated_substeps += sat ? 1 : 0;
      offset(0) = filter_.q_f(0);
    }
    const Eigen::Vector2d tau = admittance::TrackingController(
        params_.dynamics, joints_, q_ref + offset, Eigen::Vector2d::Zero(),
        params_.tracking);
    joints_ = admittance::DynamicsStep(params_.dynamics, joints_, tau,
                                       tau_e_vec, h);
    if (penetrating) {
      const double step = params_.advance_speed * h;
      volume_ = std::min(params_.volume_max, volume_ + depth * step);
      advance_ += step;
    }
  }
  double depth = 0.0;
  tau_e_ = TauE(joints_.q, advance_, &depth);
  ++steps_;

  const double r_f = FillReward();
  const double r_e = EndReward();
  StepResult r;
  r.observation = Observe();
  r.truncated = steps_ >= params_.max_episode_steps;
  const bool reward_now = steps_ == reward_step();
  const bool fail = r_f < 0.5 || r_e < 0.5;
  if (spec_.reward_mode == RewardMode::kSparse) {
    r.reward = reward_now ? (fail ? -10.0 : r_f + r_e) : 0.0;
  } else {
    r.reward = r_f + r_e;
  }
  if (reward_now) r.info["fail"] = fail ? 1.0 : 0.0;
  r.success = reward_now && !fail;
  r.info["fill_rate"] = r_f;
  r.info["end_reward"] = r_e;
  r.info["phase"] = penetrating ? 1.0 : 2.0;
  r.info["tau_e"] = tau_e_;
  r.info["depth"] = depth;
  r.info["saturated_substeps"] = saturated_substeps;
  r.info["branch_crossings"] = branch_crossings_;
  r.info["clipped"] = clipped ? 1.0 : 0.0;
  if (record_) {
    admittance::TrajectoryRow row;
    row.t = steps_ * params_.control_dt;
    row.q = joints_.q;
    row.q_ref = q_ref;
    row.tau_e = tau_e_;
    row.q_f = filter_.q_f;
    row.phase = penetrating ? 1 : 2;
    trajectory_.push_back(row);
  }
  return r;
}

std::unique_ptr<Env> ScoopLoader::Clone() const {
  return std::make_unique<ScoopLoader>(*this);
}

}  // namespace drlr::envs

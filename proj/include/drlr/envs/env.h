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

#ifndef DRLR_ENVS_ENV_H_
#define DRLR_ENVS_ENV_H_

#include <map>
#include <memory>
#include <string>

#include <Eigen/Core>

#include "drlr/rng.h"

namespace drlr::envs {

enum class RewardMode { kDense, kSparse };

const char* RewardModeName(RewardMode mode);

struct EnvSpec {
  std::string name;
  int state_dim = 0;
  int action_dim = 0;
  int max_episode_steps = 0;
  RewardMode reward_mode = RewardMode::kDense;
};

struct StepResult {
  Eigen::VectorXd observation;
  double reward = 0.0;
  bool terminal = false;
  bool truncated = false;
  bool success = false;
  std::map<std::string, double> info;

  bool done() const { return terminal || truncated; }
};

// Single-owner stateful simulator. Step is a deterministic function of the
// internal state and the action; all randomness is drawn in Reset.
class Env {
 public:
  virtual ~Env() = default;

  virtual const EnvSpec& spec() const = 0;
  virtual Eigen::VectorXd Reset(Rng& rng) = 0;
  // Actions outside [-1, 1] are clipped; the clip is reported in
  // info["clipped"].
  virtual StepResult Step(const Eigen::VectorXd& action) = 0;
  virtual Eigen::VectorXd Observe() const = 0;
  virtual std::unique_ptr<Env> Clone() const = 0;

  int steps() const { return steps_; }

 protected:
  // Clips into [-1, 1]; returns true if any entry moved.
  static bool ClipAction(const Eigen::VectorXd& action, int action_dim,
                         Eigen::VectorXd* clipped);

  int steps_ = 0;
};

}  // namespace drlr::envs

#endif  // DRLR_ENVS_ENV_H_

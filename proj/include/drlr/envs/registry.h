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

#ifndef DRLR_ENVS_REGISTRY_H_
#define DRLR_ENVS_REGISTRY_H_

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "drlr/buffers/demo_buffer.h"
#include "drlr/envs/env.h"
#include "drlr/rng.h"

namespace drlr::envs {

// Names are "point_reach", "arm_drawer" or "scoop_loader", optionally
// suffixed ":dense" or ":sparse". Without a suffix scoop_loader is sparse and
// the others are dense. Throws std::invalid_argument on unknown names.
std::unique_ptr<Env> MakeEnv(const std::string& name);
std::vector<std::string> EnvNames();

// Deterministic observation -> action map.
using Policy = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

// Hand-written controller for the named environment (reward suffix ignored).
Policy ScriptedExpert(const std::string& env_name);

struct EpisodeStats {
  double episode_return = 0.0;
  bool success = false;
  int length = 0;
};

// Runs one episode from Reset(rng). With noise_std > 0 Gaussian noise drawn
// from `rng` is added to each action before clipping. Transitions are
// appended to `out` when non-null.
EpisodeStats Rollout(Env& env, const Policy& policy, double noise_std,
                     Rng& rng, std::vector<Transition>* out = nullptr);

// Uniform-random actions for one episode.
std::vector<Transition> RandomRollout(Env& env, Rng& rng);

DemoBuffer GenerateDemos(Env& env, const Policy& expert, int n_episodes,
                         double noise_std, Rng& rng);

}  // namespace drlr::envs

#endif  // DRLR_ENVS_REGISTRY_H_

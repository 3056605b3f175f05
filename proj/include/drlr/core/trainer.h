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

#ifndef DRLR_CORE_TRAINER_H_
#define DRLR_CORE_TRAINER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "drlr/agents/losses.h"
#include "drlr/agents/networks.h"
#include "drlr/buffers/demo_buffer.h"
#include "drlr/core/metric_log.h"
#include "drlr/core/selector.h"
#include "drlr/envs/env.h"
#include "drlr/envs/registry.h"
#include "drlr/rng.h"

namespace drlr::core {

using envs::Env;
using envs::EpisodeStats;
using envs::Policy;
using envs::StepResult;
using envs::EnvSpec;

enum class Algo {
  kBc,
  kTd3,
  kSac,
  kTd3Bc,
  kIbrlTd3,
  kIbrlSac,
  kDrlrTd3,
  kDrlrSac,
};

const char* AlgoName(Algo algo);
// Throws std::invalid_argument listing the valid names.
Algo ParseAlgo(const std::string& name);
std::vector<Algo> AllAlgos();

bool IsOffline(Algo algo);      // bc, td3bc
bool UsesDemos(Algo algo);      // everything except td3, sac
bool IsSacFamily(Algo algo);    // sac, ibrl_sac, drlr_sac
bool IsIbrl(Algo algo);
bool IsDrlr(Algo algo);

struct TrainConfig {
  Algo algo = Algo::kDrlrSac;
  std::uint64_t seed = 10;
  // Environment steps for online algorithms, gradient steps for offline ones.
  std::int64_t total_steps = 0;
  int batch_size = 128;
  double lr = 3e-4;
  double gamma = 0.99;
  int utd = 1;
  double tau = 0.005;
  double initial_alpha = 0.1;
  bool learn_alpha = true;
  // Defaults to -action_dim when unset.
  std::optional<double> target_entropy;
  SelectorConfig selector;
  std::size_t replay_capacity = 300000;
  // Copy every demo transition into the replay buffer before training; IBRL
  // then samples plain replay minibatches.
  bool prefill_replay = false;
  // Fraction of each DRLR minibatch (and of non-prefilled IBRL minibatches)
  // drawn from the demos.
  double demo_ratio = 0.5;
  int policy_delay = 2;
  double exploration_std = 0.1;
  double smooth_noise_std = 0.1;
  double smooth_noise_clip = 0.5;
  double alpha_bc = 2.5;
  RefKind ref_kind = RefKind::kBc;
  std::int64_t ref_steps = 2000;
  // Uniform-random actions for the first random_steps environment steps.
  std::int64_t random_steps = 0;
  // Updates start once the replay buffer holds this many transitions.
  std::int64_t update_after = 128;
  // 0 evaluates only at the end.
  std::int64_t eval_every = 0;
  int eval_episodes = 5;
  agents::NetworkShape network;
};

// Throws std::invalid_argument naming the offending field.
void Validate(const TrainConfig& cfg);

// Everything a run learns. Which members are live depends on the algorithm.
struct Agent {
  Algo algo = Algo::kDrlrSac;
  agents::DeterministicPolicy actor;
  agents::DeterministicPolicy target_actor;
  agents::GaussianPolicy gaussian;
  agents::TwinCritic critic;
  agents::TwinCritic target_critic;
  agents::TwinCriticOptimizer critic_opt;
  nn::AdamState actor_opt;
  agents::Temperature temperature;
  std::optional<RefPolicy> ref;
};

Agent CreateAgent(const TrainConfig& cfg, int state_dim, int action_dim,
                  Rng& init_rng);

// Noise-free action of the deployed policy. Selector algorithms use the hard
// comparison of their mode with the RL policy's deterministic head.
Eigen::VectorXd GreedyAction(const Agent& agent, const TrainConfig& cfg,
                             const DemoBuffer* demo,
                             const Eigen::VectorXd& state, Rng& rng);
// Deterministic head of the learned (non-reference) policy.
Eigen::MatrixXd RlGreedy(const Agent& agent, const Eigen::MatrixXd& states);

struct EvalResult {
  double mean_return = 0.0;
  double std_return = 0.0;
  double success_rate = 0.0;
  int episodes = 0;
};

EvalResult EvaluatePolicy(Env& env, const Policy& policy, int episodes,
                          Rng& rng);

// Trains a frozen reference policy on the demos: BC, or TD3+BC with its own
// critic.
RefPolicy TrainReference(const DemoBuffer& demo, const TrainConfig& cfg,
                         std::int64_t steps, Rng& rng);

// Mean squared distance between the learned policy's deterministic head and
// the stored actions of `batch`.
double BcDiagnostic(const Agent& agent, const Batch& batch);

struct TrainedRun {
  Agent initial;
  Agent agent;
  std::vector<MetricRow> log;
  EvalResult final_eval;
  std::int64_t steps_done = 0;
  // Set when a sub-operation threw; the run stopped at steps_done.
  std::optional<std::string> failure;
};

// Runs any algorithm. `demo` is required when UsesDemos(cfg.algo). The
// environment is used for training only; evaluation runs on a clone.
TrainedRun Train(Env& env, const DemoBuffer* demo, const TrainConfig& cfg);

// Checkpoint of every live network, headed by the algorithm name.
void SaveAgent(const std::string& path, const Agent& agent,
               const TrainConfig& cfg);

}  // namespace drlr::core

#endif  // DRLR_CORE_TRAINER_H_

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

#ifndef DRLR_CORE_SELECTOR_H_
#define DRLR_CORE_SELECTOR_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "drlr/agents/networks.h"
#include "drlr/buffers/demo_buffer.h"
#include "drlr/buffers/replay_buffer.h"
#include "drlr/rng.h"

namespace drlr::core {

enum class SelectorMode { kIbrlHard, kIbrlSoft, kDrlr };

struct SelectorConfig {
  SelectorMode mode = SelectorMode::kDrlr;
  double softmax_temperature = 1.0;  // kIbrlSoft only
  int demo_eval_batch = 128;         // kDrlr only
  agents::QReduce q_reduce = agents::QReduce::kMin;
  // kDrlr bootstrap: compare each row against the demo mean instead of one
  // decision for the whole minibatch.
  bool per_row = false;
};

void Validate(const SelectorConfig& cfg);

enum class Branch { kRef, kRl };
enum class Phase { kActorProposal, kBootstrapProposal };

const char* BranchName(Branch b);
const char* PhaseName(Phase p);

// One action-selection event.
struct SelectionDecision {
  double q_ref = 0.0;
  double q_rl = 0.0;
  Branch chosen = Branch::kRl;
  Phase phase = Phase::kActorProposal;
  std::int64_t step = 0;
};

enum class RefKind { kBc, kTd3Bc };

// Reference policy trained offline on the demonstrations, frozen afterwards.
struct RefPolicy {
  RefKind kind = RefKind::kBc;
  agents::DeterministicPolicy policy;
};

// ---- IBRL -------------------------------------------------------------------

struct Proposal {
  Eigen::VectorXd action;
  SelectionDecision decision;
};

// Chooses between mu_ref(s) and the supplied RL candidate by the target
// critic's value. Hard mode takes the strictly larger value (ties go to the RL
// candidate); soft mode samples with probability proportional to exp(Q / T).
Proposal IbrlPropose(const Eigen::VectorXd& state, const RefPolicy& ref,
                     const Eigen::VectorXd& rl_action,
                     const agents::TwinCritic& target_critic,
                     const SelectorConfig& cfg, Rng& rng,
                     std::int64_t step = 0);

// Probability that soft mode picks the reference branch.
double SoftRefProbability(double q_ref, double q_rl, double temperature);

// Per-row max (or softmax draw) over {mu_ref(s'), rl_next_actions}. When the
// RL candidate wins a row its entropy bonus -alpha * log_prob is included;
// pass alpha = 0 for deterministic RL policies.
Eigen::VectorXd IbrlBellmanTarget(const Batch& batch, const RefPolicy& ref,
                                  const Eigen::MatrixXd& rl_next_actions,
                                  const Eigen::VectorXd& rl_next_log_probs,
                                  const agents::TwinCritic& target_critic,
                                  double gamma, double alpha,
                                  const SelectorConfig& cfg, Rng& rng);

// ---- DRLR -------------------------------------------------------------------

struct Selection {
  Eigen::MatrixXd actions;  // (action_dim, n) actions for the query states
  SelectionDecision decision;
  std::vector<std::size_t> demo_indices;  // demo states used for q_ref
  std::vector<bool> row_is_ref;           // per-row choice
};

// q_ref = mean over demo_eval_batch demo states s' of Q'(s', mu_ref(s'));
// q_rl = mean over the query states of Q'(s, rl_actions). The reference
// branch wins only when q_ref > q_rl strictly; the winner's actions at the
// query states are returned.
Selection DrlrSelect(const Eigen::MatrixXd& query_states, const RefPolicy& ref,
                     const Eigen::MatrixXd& rl_actions,
                     const agents::TwinCritic& target_critic,
                     const DemoBuffer& demo, const SelectorConfig& cfg,
                     Rng& rng, Phase phase = Phase::kActorProposal,
                     std::int64_t step = 0);

struct DrlrTarget {
  Eigen::VectorXd targets;
  Selection selection;
};

// Bootstrap with the calibrated selector on the next states. RL rows get the
// soft target including -alpha * log_prob; reference rows use
// Q'(s', mu_ref(s')) with no entropy term.
DrlrTarget DrlrBellmanTarget(const Batch& batch, const DemoBuffer& demo,
                             const RefPolicy& ref,
                             const Eigen::MatrixXd& rl_next_actions,
                             const Eigen::VectorXd& rl_next_log_probs,
                             const agents::TwinCritic& target_critic,
                             double gamma, double alpha,
                             const SelectorConfig& cfg, Rng& rng,
                             std::int64_t step = 0);

// ceil(ratio * n) transitions from the demo buffer followed by the remainder
// from the replay buffer.
Batch MixedMinibatch(const ReplayBuffer& replay, const DemoBuffer& demo, int n,
                     double ratio, Rng& rng);

}  // namespace drlr::core

#endif  // DRLR_CORE_SELECTOR_H_

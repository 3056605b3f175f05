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

#include "drlr/core/selector.h"

#include <cmath>
#include <stdexcept>

namespace drlr::core {

void Validate(const SelectorConfig& cfg) {
  if (!(cfg.softmax_temperature > 0.0)) {
    throw std::invalid_argument("selector: softmax_temperature must be > 0");
  }
  if (cfg.demo_eval_batch <= 0) {
    throw std::invalid_argument("selector: demo_eval_batch must be > 0");
  }
}

const char* BranchName(Branch b) { return b == Branch::kRef ? "ref" : "rl"; }

const char* PhaseName(Phase p) {
  return p == Phase::kActorProposal ? "actor_proposal" : "bootstrap_proposal";
}

double SoftRefProbability(double q_ref, double q_rl, double temperature) {
  // exp(q_ref/T) / (exp(q_ref/T) + exp(q_rl/T)), written as a logistic.
  const double z = (q_ref - q_rl) / temperature;
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

Branch Choose(double q_ref, double q_rl, const SelectorConfig& cfg, Rng& rng) {
  if (cfg.mode == SelectorMode::kIbrlSoft) {
    const double p = SoftRefProbability(q_ref, q_rl, cfg.softmax_temperature);
    return Uniform(rng, 0.0, 1.0) < p ? Branch::kRef : Branch::kRl;
  }
  return q_ref > q_rl ? Branch::kRef : Branch::kRl;
}

}  // namespace

Proposal IbrlPropose(const Eigen::VectorXd& state, const RefPolicy& ref,
                     const Eigen::VectorXd& rl_action,
                     const agents::TwinCritic& target_critic,
                     const SelectorConfig& cfg, Rng& rng, std::int64_t step) {
  if (cfg.mode == SelectorMode::kDrlr) {
    throw std::invalid_argument("IbrlPropose: selector mode is drlr");
  }
  const Eigen::VectorXd ref_action = ref.policy.Act(state);
  Eigen::MatrixXd states(state.size(), 2);
  states << state, state;
  Eigen::MatrixXd actions(ref_action.size(), 2);
  actions << ref_action, rl_action;
  const Eigen::VectorXd q = target_critic.Reduced(cfg.q_reduce, states, actions);
  Proposal out;
  out.decision.q_ref = q(0);
  out.decision.q_rl = q(1);
  out.decision.phase = Phase::kActorProposal;
  out.decision.step = step;
  out.decision.chosen = Choose(q(0), q(1), cfg, rng);
  out.action = out.decision.chosen == Branch::kRef ? ref_action : rl_action;
  return out;
}

Eigen::VectorXd IbrlBellmanTarget(const Batch& batch, const RefPolicy& ref,
                                  const Eigen::MatrixXd& rl_next_actions,
                                  const Eigen::VectorXd& rl_next_log_probs,
                                  const agents::TwinCritic& target_critic,
                                  double gamma, double alpha,
                                  const SelectorConfig& cfg, Rng& rng) {
  if (cfg.mode == SelectorMode::kDrlr) {
    throw std::invalid_argument("IbrlBellmanTarget: selector mode is drlr");
  }
  const Eigen::MatrixXd ref_next = ref.policy.Act(batch.next_states);
  const Eigen::VectorXd q_ref =
      target_critic.Reduced(cfg.q_reduce, batch.next_states, ref_next);
  const Eigen::VectorXd q_rl =
      target_critic.Reduced(cfg.q_reduce, batch.next_states, rl_next_actions);
  Eigen::VectorXd y(batch.size());
  for (int j = 0; j < batch.size(); ++j) {
    const double rl_value = q_rl(j) - alpha * rl_next_log_probs(j);
    // The candidates are compared on their critic values alone.
    const Branch b = Choose(q_ref(j), q_rl(j), cfg, rng);
    const double next = b == Branch::kRef ? q_ref(j) : rl_value;
    y(j) = batch.rewards(j) + gamma * batch.not_done(j) * next;
  }
  return y;
}

Selection DrlrSelect(const Eigen::MatrixXd& query_states, const RefPolicy& ref,
                     const Eigen::MatrixXd& rl_actions,
                     const agents::TwinCritic& target_critic,
                     const DemoBuffer& demo, const SelectorConfig& cfg,
                     Rng& rng, Phase phase, std::int64_t step) {
  if (demo.empty()) throw std::invalid_argument("DrlrSelect: empty demo buffer");
  if (query_states.cols() != rl_actions.cols()) {
    throw std::invalid_argument("DrlrSelect: rl_actions batch mismatch");
  }
  Selection out;
  out.demo_indices = demo.SampleIndices(cfg.demo_eval_batch, rng);
  Eigen::MatrixXd demo_states(demo.state_dim(), cfg.demo_eval_batch);
  for (int j = 0; j < cfg.demo_eval_batch; ++j) {
    demo_states.col(j) = demo.at(out.demo_indices[j]).state;
  }
  const Eigen::VectorXd q_ref_rows = target_critic.Reduced(
      cfg.q_reduce, demo_states, ref.policy.Act(demo_states));
  const Eigen::VectorXd q_rl_rows =
      target_critic.Reduced(cfg.q_reduce, query_states, rl_actions);
  SelectionDecision& d = out.decision;
  d.q_ref = q_ref_rows.mean();
  d.q_rl = q_rl_rows.mean();
  d.phase = phase;
  d.step = step;

  const Eigen::Index n = query_states.cols();
  out.row_is_ref.assign(n, false);
  if (cfg.per_row) {
    int refs = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      out.row_is_ref[j] = d.q_ref > q_rl_rows(j);
      refs += out.row_is_ref[j] ? 1 : 0;
    }
    d.chosen = 2 * refs > n ? Branch::kRef : Branch::kRl;
  } else {
    d.chosen = d.q_ref > d.q_rl ? Branch::kRef : Branch::kRl;
    out.row_is_ref.assign(n, d.chosen == Branch::kRef);
  }
  out.actions = rl_actions;
  bool any_ref = false;
  for (bool r : out.row_is_ref) any_ref = any_ref || r;
  if (any_ref) {
    const Eigen::MatrixXd ref_actions = ref.policy.Act(query_states);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (out.row_is_ref[j]) out.actions.col(j) = ref_actions.col(j);
    }
  }
  return out;
}

DrlrTarget DrlrBellmanTarget(const Batch& batch, const DemoBuffer& demo,
                             const RefPolicy& ref,
                             const Eigen::MatrixXd& rl_next_actions,
                             const Eigen::VectorXd& rl_next_log_probs,
                             const agents::TwinCritic& target_critic,
                             double gamma, double alpha,
                             const SelectorConfig& cfg, Rng& rng,
                             std::int64_t step) {
  if (cfg.mode != SelectorMode::kDrlr) {
    throw std::invalid_argument("DrlrBellmanTarget: selector mode is not drlr");
  }
  DrlrTarget out;
  out.selection =
      DrlrSelect(batch.next_states, ref, rl_next_actions, target_critic, demo,
                 cfg, rng, Phase::kBootstrapProposal, step);
  const Eigen::VectorXd q_next = target_critic.Reduced(
      cfg.q_reduce, batch.next_states, out.selection.actions);
  out.targets.resize(batch.size());
  for (int j = 0; j < batch.size(); ++j) {
    const double entropy =
        out.selection.row_is_ref[j] ? 0.0 : alpha * rl_next_log_probs(j);
    out.targets(j) = batch.rewards(j) +
                     gamma * batch.not_done(j) * (q_next(j) - entropy);
  }
  return out;
}

Batch MixedMinibatch(const ReplayBuffer& replay, const DemoBuffer& demo, int n,
                     double ratio, Rng& rng) {
  if (replay.empty() || demo.empty()) {
    throw std::runtime_error("MixedMinibatch: both buffers must be non-empty");
  }
  if (n <= 0 || !(ratio >= 0.0 && ratio <= 1.0)) {
    throw std::invalid_argument("MixedMinibatch: bad n or ratio");
  }
  const int n_demo = static_cast<int>(std::ceil(ratio * n - 1e-12));
  const int n_replay = n - n_demo;
  Batch from_demo = n_demo > 0 ? demo.Sample(n_demo, rng) : Batch{};
  Batch from_replay = n_replay > 0 ? replay.Sample(n_replay, rng) : Batch{};
  return Concat(from_demo, from_replay);
}

}  // namespace drlr::core

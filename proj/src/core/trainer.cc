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

#include "drlr/core/trainer.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "drlr/buffers/replay_buffer.h"
#include "drlr/nn/adam.h"
#include "drlr/nn/checkpoint.h"
#include "drlr/nn/mlp.h"

namespace drlr::core {
namespace {

using agents::DeterministicPolicy;
using agents::GaussianPolicy;
using agents::TwinCritic;

constexpr struct {
  Algo algo;
  const char* name;
} kAlgoNames[] = {
    {Algo::kBc, "bc"},
    {Algo::kTd3, "td3"},
    {Algo::kSac, "sac"},
    {Algo::kTd3Bc, "td3bc"},
    {Algo::kIbrlTd3, "ibrl_td3"},
    {Algo::kIbrlSac, "ibrl_sac"},
    {Algo::kDrlrTd3, "drlr_td3"},
    {Algo::kDrlrSac, "drlr_sac"},
};

void Require(bool ok, const char* field, const std::string& what) {
  if (!ok) {
    throw std::invalid_argument(std::string(field) + ": " + what);
  }
}

void PolyakCritic(const TwinCritic& online, double tau, TwinCritic* target) {
  nn::PolyakUpdate(online.q1, tau, &target->q1);
  nn::PolyakUpdate(online.q2, tau, &target->q2);
}

Eigen::MatrixXd ClipUnit(const Eigen::MatrixXd& a) {
  return a.cwiseMax(-1.0).cwiseMin(1.0);
}

Eigen::VectorXd UniformAction(int action_dim, Rng& rng) {
  Eigen::VectorXd a(action_dim);
  for (int i = 0; i < action_dim; ++i) a(i) = Uniform(rng, -1.0, 1.0);
  return a;
}

// Exploratory action of the learned policy.
Eigen::VectorXd RlExplore(const Agent& agent, const TrainConfig& cfg,
                          const Eigen::VectorXd& state, Rng& rng) {
  if (IsSacFamily(agent.algo)) {
    return agent.gaussian.Rsample(Eigen::MatrixXd(state), rng).actions.col(0);
  }
  Eigen::VectorXd a = agent.actor.Act(state);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    a(i) += cfg.exploration_std * StandardNormal(rng);
  }
  return ClipUnit(a);
}

void FillDecision(const SelectionDecision& d, MetricRow* row) {
  row->phase = PhaseName(d.phase);
  row->q_ref = d.q_ref;
  row->q_rl = d.q_rl;
  row->chosen = BranchName(d.chosen);
}

struct UpdateStats {
  double critic_loss = 0.0;
  std::optional<double> actor_loss;
  std::optional<double> alpha;
  std::optional<SelectionDecision> bootstrap;
};

// One gradient step of an offline learner on demo minibatches.
UpdateStats OfflineUpdate(const DemoBuffer& demo, const TrainConfig& cfg,
                          Rng& rng, agents::PolicyDelay* delay, Agent* agent) {
  UpdateStats stats;
  const Batch batch = demo.Sample(cfg.batch_size, rng);
  if (agent->algo == Algo::kBc) {
    stats.actor_loss =
        agents::BcStep(batch, cfg.lr, &agent->actor, &agent->actor_opt);
    return stats;
  }
  const Eigen::VectorXd y = agents::Td3Target(
      agent->target_critic, agent->target_actor, batch, cfg.gamma,
      cfg.smooth_noise_std, cfg.smooth_noise_clip, rng);
  stats.critic_loss = agents::CriticStep(batch, y, cfg.lr, &agent->critic,
                                         &agent->critic_opt);
  if (delay->Tick()) {
    stats.actor_loss =
        agents::Td3BcActorStep(batch, agent->critic, cfg.alpha_bc, cfg.lr,
                               &agent->actor, &agent->actor_opt);
    nn::PolyakUpdate(agent->actor.trunk, cfg.tau, &agent->target_actor.trunk);
    PolyakCritic(agent->critic, cfg.tau, &agent->target_critic);
  }
  return stats;
}

struct OnlineRngs {
  Rng& buffer;
  Rng& update;
  Rng& selector;
};

UpdateStats OnlineUpdate(const TrainConfig& cfg, const ReplayBuffer& replay,
                         const DemoBuffer* demo, OnlineRngs rngs,
                         agents::PolicyDelay* delay, std::int64_t step,
                         Agent* agent) {
  UpdateStats stats;
  const bool mixed =
      IsDrlr(cfg.algo) || (IsIbrl(cfg.algo) && !cfg.prefill_replay);
  const Batch batch =
      mixed ? MixedMinibatch(replay, *demo, cfg.batch_size, cfg.demo_ratio,
                             rngs.buffer)
            : replay.Sample(cfg.batch_size, rngs.buffer);
  const Eigen::Index n = batch.size();

  Eigen::MatrixXd next_actions;
  Eigen::VectorXd next_log_probs = Eigen::VectorXd::Zero(n);
  double alpha = 0.0;
  if (IsSacFamily(cfg.algo)) {
    GaussianPolicy::Sample s =
        agent->gaussian.Rsample(batch.next_states, rngs.update);
    next_actions = std::move(s.actions);
    next_log_probs = std::move(s.log_probs);
    alpha = agent->temperature.alpha();
  } else {
    const int adim = agent->actor.action_dim();
    next_actions = ClipUnit(
        agent->target_actor.Act(batch.next_states) +
        agents::SmoothingNoise(adim, static_cast<int>(n), cfg.smooth_noise_std,
                               cfg.smooth_noise_clip, rngs.update));
  }

  Eigen::VectorXd y;
  if (IsIbrl(cfg.algo)) {
    y = IbrlBellmanTarget(batch, *agent->ref, next_actions, next_log_probs,
                          agent->target_critic, cfg.gamma, alpha, cfg.selector,
                          rngs.selector);
  } else if (IsDrlr(cfg.algo)) {
    DrlrTarget t = DrlrBellmanTarget(batch, *demo, *agent->ref, next_actions,
                                     next_log_probs, agent->target_critic,
                                     cfg.gamma, alpha, cfg.selector,
                                     rngs.selector, step);
    y = std::move(t.targets);
    stats.bootstrap = t.selection.decision;
  } else {
    y = agents::SacTarget(agent->target_critic, batch, next_actions,
                          next_log_probs, cfg.gamma, alpha);
  }
  stats.critic_loss = agents::CriticStep(batch, y, cfg.lr, &agent->critic,
                                         &agent->critic_opt);

  if (IsSacFamily(cfg.algo)) {
    agents::SacActorLoss a = agents::SacActorStep(
        batch.states, agent->critic, agent->temperature.alpha(), cfg.lr,
        rngs.update, &agent->gaussian, &agent->actor_opt);
    stats.actor_loss = a.loss;
    agents::AlphaStep(a.mean_log_prob, cfg.lr, &agent->temperature);
    stats.alpha = agent->temperature.alpha();
    PolyakCritic(agent->critic, cfg.tau, &agent->target_critic);
  } else if (delay->Tick()) {
    agents::LossAndGrad lg =
        agents::Td3ActorLoss(agent->actor, agent->critic, batch.states);
    nn::AdamStep(lg.grad, cfg.lr, &agent->actor.trunk, &agent->actor_opt);
    stats.actor_loss = lg.loss;
    nn::PolyakUpdate(agent->actor.trunk, cfg.tau, &agent->target_actor.trunk);
    PolyakCritic(agent->critic, cfg.tau, &agent->target_critic);
  }
  return stats;
}

MetricRow EvalRow(std::int64_t step, const EvalResult& e) {
  MetricRow row;
  row.step = step;
  row.phase = "eval";
  row.episode_return = e.mean_return;
  row.success = e.success_rate;
  return row;
}

}  // namespace

const char* AlgoName(Algo algo) {
  for (const auto& entry : kAlgoNames) {
    if (entry.algo == algo) return entry.name;
  }
  return "unknown";
}

Algo ParseAlgo(const std::string& name) {
  std::string valid;
  for (const auto& entry : kAlgoNames) {
    if (name == entry.name) return entry.algo;
    if (!valid.empty()) valid += ", ";
    valid += entry.name;
  }
  throw std::invalid_argument("unknown algo '" + name + "' (valid: " + valid +
                              ")");
}

std::vector<Algo> AllAlgos() {
  std::vector<Algo> out;
  for (const auto& entry : kAlgoNames) out.push_back(entry.algo);
  return out;
}

bool IsOffline(Algo algo) { return algo == Algo::kBc || algo == Algo::kTd3Bc; }
bool UsesDemos(Algo algo) { return algo != Algo::kTd3 && algo != Algo::kSac; }
bool IsSacFamily(Algo algo) {
  return algo == Algo::kSac || algo == Algo::kIbrlSac ||
         algo == Algo::kDrlrSac;
}
bool IsIbrl(Algo algo) {
  return algo == Algo::kIbrlTd3 || algo == Algo::kIbrlSac;
}
bool IsDrlr(Algo algo) {
  return algo == Algo::kDrlrTd3 || algo == Algo::kDrlrSac;
}

void Validate(const TrainConfig& cfg) {
  Require(cfg.total_steps >= 0, "total_steps", "must be >= 0");
  Require(cfg.batch_size >= 1, "batch_size", "must be >= 1");
  Require(cfg.lr > 0.0 && std::isfinite(cfg.lr), "lr", "must be > 0");
  Require(cfg.gamma >= 0.0 && cfg.gamma <= 1.0, "gamma", "must be in [0, 1]");
  Require(cfg.utd >= 1, "utd", "must be >= 1");
  Require(cfg.tau > 0.0 && cfg.tau <= 1.0, "tau", "must be in (0, 1]");
  Require(cfg.initial_alpha > 0.0 && std::isfinite(cfg.initial_alpha),
          "initial_alpha", "must be > 0");
  Require(!cfg.target_entropy || std::isfinite(*cfg.target_entropy),
          "target_entropy", "must be finite");
  Require(cfg.replay_capacity >= 1, "replay_capacity", "must be >= 1");
  Require(cfg.demo_ratio >= 0.0 && cfg.demo_ratio <= 1.0, "demo_ratio",
          "must be in [0, 1]");
  Require(cfg.policy_delay >= 1, "policy_delay", "must be >= 1");
  Require(cfg.exploration_std >= 0.0, "exploration_std", "must be >= 0");
  Require(cfg.smooth_noise_std >= 0.0, "smooth_noise_std", "must be >= 0");
  Require(cfg.smooth_noise_clip >= 0.0, "smooth_noise_clip", "must be >= 0");
  Require(cfg.alpha_bc > 0.0, "alpha_bc", "must be > 0");
  Require(cfg.ref_steps >= 0, "ref_steps", "must be >= 0");
  Require(cfg.random_steps >= 0, "random_steps", "must be >= 0");
  Require(cfg.update_after >= 1, "update_after", "must be >= 1");
  Require(cfg.eval_every >= 0, "eval_every", "must be >= 0");
  Require(cfg.eval_episodes >= 1, "eval_episodes", "must be >= 1");
  Require(cfg.network.hidden_width >= 1, "hidden_width", "must be >= 1");
  Require(cfg.network.hidden_layers >= 0, "hidden_layers", "must be >= 0");
  Validate(cfg.selector);
  if (IsIbrl(cfg.algo)) {
    Require(cfg.selector.mode != SelectorMode::kDrlr, "selector",
            "ibrl algorithms need mode ibrl_hard or ibrl_soft");
  }
  if (IsDrlr(cfg.algo)) {
    Require(cfg.selector.mode == SelectorMode::kDrlr, "selector",
            "drlr algorithms need mode drlr");
  }
}

Agent CreateAgent(const TrainConfig& cfg, int state_dim, int action_dim,
                  Rng& init_rng) {
  Agent agent;
  agent.algo = cfg.algo;
  const std::uint64_t actor_seed = init_rng();
  const std::uint64_t critic_seed = init_rng();
  if (IsSacFamily(cfg.algo)) {
    agent.gaussian = GaussianPolicy::Create(state_dim, action_dim,
                                            cfg.network, actor_seed);
    agent.actor_opt = nn::AdamState::For(agent.gaussian.trunk);
  } else {
    agent.actor = DeterministicPolicy::Create(state_dim, action_dim,
                                              cfg.network, actor_seed);
    agent.target_actor = agent.actor;
    agent.actor_opt = nn::AdamState::For(agent.actor.trunk);
  }
  if (cfg.algo != Algo::kBc) {
    agent.critic =
        TwinCritic::Create(state_dim, action_dim, cfg.network, critic_seed);
    agent.target_critic = agent.critic;
    agent.critic_opt = agents::TwinCriticOptimizer::For(agent.critic);
  }
  const bool learn = IsSacFamily(cfg.algo) && cfg.learn_alpha;
  agent.temperature = agents::Temperature::Create(
      cfg.initial_alpha, learn,
      cfg.target_entropy.value_or(-static_cast<double>(action_dim)));
  return agent;
}

Eigen::MatrixXd RlGreedy(const Agent& agent, const Eigen::MatrixXd& states) {
  if (IsSacFamily(agent.algo)) return agent.gaussian.MeanAction(states);
  return agent.actor.Act(states);
}

Eigen::VectorXd GreedyAction(const Agent& agent, const TrainConfig& cfg,
                             const DemoBuffer* demo,
                             const Eigen::VectorXd& state, Rng& rng) {
  const Eigen::MatrixXd s = state;
  const Eigen::MatrixXd rl = RlGreedy(agent, s);
  if (IsIbrl(agent.algo)) {
    SelectorConfig hard = cfg.selector;
    hard.mode = SelectorMode::kIbrlHard;
    return IbrlPropose(state, *agent.ref, rl.col(0), agent.target_critic, hard,
                       rng)
        .action;
  }
  if (IsDrlr(agent.algo)) {
    return DrlrSelect(s, *agent.ref, rl, agent.target_critic, *demo,
                      cfg.selector, rng)
        .actions.col(0);
  }
  return rl.col(0);
}

EvalResult EvaluatePolicy(Env& env, const Policy& policy, int episodes,
                          Rng& rng) {
  if (episodes < 1) throw std::invalid_argument("episodes must be >= 1");
  EvalResult out;
  out.episodes = episodes;
  std::vector<double> returns;
  int successes = 0;
  for (int e = 0; e < episodes; ++e) {
    EpisodeStats s = Rollout(env, policy, 0.0, rng);
    returns.push_back(s.episode_return);
    successes += s.success ? 1 : 0;
  }
  double sum = 0.0;
  for (double r : returns) sum += r;
  out.mean_return = sum / episodes;
  double var = 0.0;
  for (double r : returns) var += (r - out.mean_return) * (r - out.mean_return);
  out.std_return = std::sqrt(var / episodes);
  out.success_rate = static_cast<double>(successes) / episodes;
  return out;
}

RefPolicy TrainReference(const DemoBuffer& demo, const TrainConfig& cfg,
                         std::int64_t steps, Rng& rng) {
  if (demo.empty()) throw std::invalid_argument("reference needs demos");
  TrainConfig ref_cfg = cfg;
  ref_cfg.algo = cfg.ref_kind == RefKind::kBc ? Algo::kBc : Algo::kTd3Bc;
  Agent agent =
      CreateAgent(ref_cfg, demo.state_dim(), demo.action_dim(), rng);
  agents::PolicyDelay delay(cfg.policy_delay);
  for (std::int64_t i = 0; i < steps; ++i) {
    OfflineUpdate(demo, ref_cfg, rng, &delay, &agent);
  }
  return RefPolicy{cfg.ref_kind, agent.actor};
}

double BcDiagnostic(const Agent& agent, const Batch& batch) {
  const Eigen::MatrixXd diff = RlGreedy(agent, batch.states) - batch.actions;
  return diff.colwise().squaredNorm().mean();
}

TrainedRun Train(Env& env, const DemoBuffer* demo, const TrainConfig& cfg) {
  Validate(cfg);
  const EnvSpec& spec = env.spec();
  if (UsesDemos(cfg.algo)) {
    if (demo == nullptr || demo->empty()) {
      throw std::invalid_argument(std::string("algo ") + AlgoName(cfg.algo) +
                                  " requires demos");
    }
    if (demo->state_dim() != spec.state_dim ||
        demo->action_dim() != spec.action_dim) {
      throw std::invalid_argument("demo dimensions do not match env " +
                                  spec.name);
    }
  }

  RngStreams rs(cfg.seed);
  Rng update_rng(DeriveSeed(cfg.seed, "update"));
  Rng ref_rng(DeriveSeed(cfg.seed, "ref"));
  std::unique_ptr<Env> eval_env = env.Clone();

  TrainedRun run;
  run.agent = CreateAgent(cfg, spec.state_dim, spec.action_dim, rs.init);
  if (UsesDemos(cfg.algo) && !IsOffline(cfg.algo)) {
    run.agent.ref = TrainReference(*demo, cfg, cfg.ref_steps, ref_rng);
  }
  run.initial = run.agent;
  Agent& agent = run.agent;
  agents::PolicyDelay delay(cfg.policy_delay);

  auto evaluate = [&]() {
    Policy greedy = [&](const Eigen::VectorXd& s) {
      return GreedyAction(agent, cfg, demo, s, rs.eval);
    };
    return EvaluatePolicy(*eval_env, greedy, cfg.eval_episodes, rs.eval);
  };
  bool last_step_evaluated = false;
  auto maybe_eval = [&](std::int64_t t) {
    last_step_evaluated = false;
    if (cfg.eval_every > 0 && t % cfg.eval_every == 0) {
      run.final_eval = evaluate();
      run.log.push_back(EvalRow(t, run.final_eval));
      last_step_evaluated = true;
    }
  };

  try {
    if (IsOffline(cfg.algo)) {
      for (std::int64_t t = 1; t <= cfg.total_steps; ++t) {
        UpdateStats u = OfflineUpdate(*demo, cfg, rs.buffer, &delay, &agent);
        MetricRow row;
        row.step = t;
        row.phase = "offline";
        if (cfg.algo == Algo::kTd3Bc) row.critic_loss = u.critic_loss;
        row.actor_loss = u.actor_loss;
        row.bc_diag_loss =
            BcDiagnostic(agent, demo->Sample(cfg.batch_size, rs.diag));
        run.log.push_back(std::move(row));
        run.steps_done = t;
        maybe_eval(t);
      }
    } else {
      ReplayBuffer replay(cfg.replay_capacity, spec.state_dim,
                          spec.action_dim);
      if (cfg.prefill_replay && demo != nullptr) {
        for (const Transition& t : demo->transitions()) replay.Push(t);
      }
      Eigen::VectorXd obs = env.Reset(rs.env);
      double episode_return = 0.0;
      bool episode_success = false;
      for (std::int64_t t = 1; t <= cfg.total_steps; ++t) {
        MetricRow row;
        row.step = t;
        row.phase = "interact";
        Eigen::VectorXd action;
        if (t <= cfg.random_steps) {
          action = UniformAction(spec.action_dim, rs.exploration);
        } else {
          const Eigen::VectorXd rl = RlExplore(agent, cfg, obs, rs.exploration);
          if (IsIbrl(cfg.algo)) {
            Proposal p = IbrlPropose(obs, *agent.ref, rl, agent.target_critic,
                                     cfg.selector, rs.selector, t);
            action = std::move(p.action);
            FillDecision(p.decision, &row);
          } else if (IsDrlr(cfg.algo)) {
            Selection sel =
                DrlrSelect(Eigen::MatrixXd(obs), *agent.ref,
                           Eigen::MatrixXd(rl), agent.target_critic, *demo,
                           cfg.selector, rs.selector, Phase::kActorProposal, t);
            action = sel.actions.col(0);
            FillDecision(sel.decision, &row);
          } else {
            action = rl;
          }
        }
        StepResult r = env.Step(action);
        replay.Push({obs, action, r.reward, r.observation, r.terminal});
        episode_return += r.reward;
        episode_success = episode_success || r.success;
        if (r.done()) {
          row.episode_return = episode_return;
          row.success = episode_success ? 1.0 : 0.0;
          episode_return = 0.0;
          episode_success = false;
          obs = env.Reset(rs.env);
        } else {
          obs = r.observation;
        }

        std::vector<MetricRow> bootstrap_rows;
        if (static_cast<std::int64_t>(replay.size()) >= cfg.update_after) {
          for (int u = 0; u < cfg.utd; ++u) {
            UpdateStats s = OnlineUpdate(
                cfg, replay, demo, OnlineRngs{rs.buffer, update_rng, rs.selector},
                &delay, t, &agent);
            row.critic_loss = s.critic_loss;
            if (s.actor_loss) row.actor_loss = s.actor_loss;
            if (s.alpha) row.alpha = s.alpha;
            if (s.bootstrap) {
              MetricRow b;
              b.step = t;
              FillDecision(*s.bootstrap, &b);
              bootstrap_rows.push_back(std::move(b));
            }
          }
        }
        if (IsSacFamily(cfg.algo)) row.alpha = agent.temperature.alpha();
        row.bc_diag_loss =
            BcDiagnostic(agent, replay.Sample(cfg.batch_size, rs.diag));
        run.log.push_back(std::move(row));
        for (MetricRow& b : bootstrap_rows) run.log.push_back(std::move(b));
        run.steps_done = t;
        maybe_eval(t);
      }
    }
  } catch (const std::exception& e) {
    run.failure = "step " + std::to_string(run.steps_done + 1) + ": " +
                  e.what();
    last_step_evaluated = false;
  }

  if (!last_step_evaluated) {
    try {
      run.final_eval = evaluate();
      if (cfg.total_steps > 0 && !run.failure) {
        run.log.push_back(EvalRow(run.steps_done, run.final_eval));
      }
    } catch (const std::exception& e) {
      if (!run.failure) run.failure = std::string("evaluation: ") + e.what();
    }
  }
  return run;
}

void SaveAgent(const std::string& path, const Agent& agent,
               const TrainConfig& cfg) {
  std::vector<const nn::MlpParams*> blocks;
  std::string names;
  auto add = [&](const char* name, const nn::MlpParams& p) {
    blocks.push_back(&p);
    if (!names.empty()) names += ',';
    names += name;
  };
  if (IsSacFamily(agent.algo)) {
    add("policy", agent.gaussian.trunk);
  } else {
    add("actor", agent.actor.trunk);
    if (agent.algo != Algo::kBc) add("target_actor", agent.target_actor.trunk);
  }
  if (agent.algo != Algo::kBc) {
    add("q1", agent.critic.q1);
    add("q2", agent.critic.q2);
    add("target_q1", agent.target_critic.q1);
    add("target_q2", agent.target_critic.q2);
  }
  if (agent.ref) add("ref", agent.ref->policy.trunk);
  std::ostringstream header;
  header << "drlr-agent v1 algo=" << AlgoName(agent.algo)
         << " seed=" << cfg.seed << " log_alpha=" << agent.temperature.log_alpha
         << " blocks=" << names;
  nn::WriteCheckpoint(path, header.str(), blocks);
}

}  // namespace drlr::core

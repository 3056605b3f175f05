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

#include "drlr/agents/losses.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace drlr::agents {
namespace {

// dQ/da for one critic head, scaled per column by `weights`.
Eigen::MatrixXd ActionGradient(const nn::MlpParams& head,
                               const Eigen::MatrixXd& states,
                               const Eigen::MatrixXd& actions,
                               const Eigen::RowVectorXd& weights,
                               Eigen::VectorXd* q_out = nullptr) {
  nn::ForwardCache cache;
  const Eigen::MatrixXd q =
      nn::Forward(head, CriticInput(states, actions), &cache);
  if (q_out != nullptr) *q_out = q.row(0).transpose();
  const nn::Grad g = nn::Backward(head, cache, weights);
  return g.input.bottomRows(actions.rows());
}

}  // namespace

LossAndGrad BcLoss(const DeterministicPolicy& policy,
                   const Eigen::MatrixXd& states,
                   const Eigen::MatrixXd& actions) {
  if (states.cols() == 0) throw std::invalid_argument("BcLoss: empty batch");
  const double n = static_cast<double>(states.cols());
  nn::ForwardCache cache;
  const Eigen::MatrixXd pred =
      nn::Forward(policy.trunk, states, &cache).array().tanh().matrix();
  const Eigen::MatrixXd diff = pred - actions;
  LossAndGrad out;
  out.loss = diff.squaredNorm() / n;
  const Eigen::MatrixXd d_pred = 2.0 * diff / n;
  const Eigen::MatrixXd d_trunk =
      d_pred.cwiseProduct((1.0 - pred.array().square()).matrix());
  out.grad = nn::Backward(policy.trunk, cache, d_trunk);
  return out;
}

double BcStep(const Batch& batch, double lr, DeterministicPolicy* policy,
              nn::AdamState* opt) {
  LossAndGrad lg = BcLoss(*policy, batch.states, batch.actions);
  nn::AdamStep(lg.grad, lr, &policy->trunk, opt);
  return lg.loss;
}

Eigen::VectorXd BootstrapTarget(const TwinCritic& target_critic,
                                const Batch& batch,
                                const Eigen::MatrixXd& next_actions,
                                double gamma) {
  const Eigen::VectorXd q =
      target_critic.Reduced(QReduce::kMin, batch.next_states, next_actions);
  return batch.rewards + gamma * batch.not_done.cwiseProduct(q);
}

Eigen::MatrixXd SmoothingNoise(int action_dim, int n, double noise_std,
                               double noise_clip, Rng& rng) {
  Eigen::MatrixXd noise = noise_std * StandardNormalMatrix(rng, action_dim, n);
  return noise.cwiseMax(-noise_clip).cwiseMin(noise_clip);
}

Eigen::VectorXd Td3Target(const TwinCritic& target_critic,
                          const DeterministicPolicy& target_actor,
                          const Batch& batch, double gamma,
                          const Eigen::MatrixXd& noise) {
  const Eigen::MatrixXd next =
      (target_actor.Act(batch.next_states) + noise).cwiseMax(-1.0).cwiseMin(1.0);
  return BootstrapTarget(target_critic, batch, next, gamma);
}

Eigen::VectorXd Td3Target(const TwinCritic& target_critic,
                          const DeterministicPolicy& target_actor,
                          const Batch& batch, double gamma, double noise_std,
                          double noise_clip, Rng& rng) {
  return Td3Target(target_critic, target_actor, batch, gamma,
                   SmoothingNoise(target_actor.action_dim(), batch.size(),
                                  noise_std, noise_clip, rng));
}

Eigen::VectorXd SacTarget(const TwinCritic& target_critic, const Batch& batch,
                          const Eigen::MatrixXd& next_actions,
                          const Eigen::VectorXd& next_log_probs, double gamma,
                          double alpha) {
  const Eigen::VectorXd q =
      target_critic.Reduced(QReduce::kMin, batch.next_states, next_actions);
  const Eigen::VectorXd soft = q - alpha * next_log_probs;
  return batch.rewards + gamma * batch.not_done.cwiseProduct(soft);
}

Eigen::VectorXd SacTarget(const TwinCritic& target_critic,
                          const GaussianPolicy& policy, const Batch& batch,
                          double gamma, double alpha, Rng& rng) {
  const GaussianPolicy::Sample next = policy.Rsample(batch.next_states, rng);
  return SacTarget(target_critic, batch, next.actions, next.log_probs, gamma,
                   alpha);
}

CriticLoss CriticLossAndGrad(const TwinCritic& critic, const Batch& batch,
                             const Eigen::VectorXd& targets) {
  if (targets.size() != batch.size()) {
    throw std::invalid_argument("CriticLoss: target count mismatch");
  }
  const Eigen::MatrixXd x = CriticInput(batch.states, batch.actions);
  const double denom = 2.0 * static_cast<double>(batch.size());
  CriticLoss out;
  auto head = [&](const nn::MlpParams& p, nn::Grad* g) {
    nn::ForwardCache cache;
    const Eigen::RowVectorXd q = nn::Forward(p, x, &cache).row(0);
    const Eigen::RowVectorXd err = q - targets.transpose();
    out.loss += 0.5 * err.squaredNorm() / denom;
    *g = nn::Backward(p, cache, err / denom);
  };
  head(critic.q1, &out.q1);
  head(critic.q2, &out.q2);
  return out;
}

double CriticStep(const Batch& batch, const Eigen::VectorXd& targets,
                  double lr, TwinCritic* critic, TwinCriticOptimizer* opt) {
  if (!targets.allFinite()) {
    throw std::invalid_argument("CriticStep: non-finite target");
  }
  CriticLoss cl = CriticLossAndGrad(*critic, batch, targets);
  nn::AdamStep(cl.q1, lr, &critic->q1, &opt->q1);
  nn::AdamStep(cl.q2, lr, &critic->q2, &opt->q2);
  return cl.loss;
}

LossAndGrad Td3ActorLoss(const DeterministicPolicy& actor,
                         const TwinCritic& critic,
                         const Eigen::MatrixXd& states) {
  const Eigen::Index n = states.cols();
  nn::ForwardCache cache;
  const Eigen::MatrixXd act =
      nn::Forward(actor.trunk, states, &cache).array().tanh().matrix();
  Eigen::VectorXd q;
  const Eigen::MatrixXd dq_da = ActionGradient(
      critic.q1, states, act,
      Eigen::RowVectorXd::Constant(n, -1.0 / static_cast<double>(n)), &q);
  LossAndGrad out;
  out.loss = -q.mean();
  out.grad = nn::Backward(
      actor.trunk, cache,
      dq_da.cwiseProduct((1.0 - act.array().square()).matrix()));
  return out;
}

PolicyDelay::PolicyDelay(int delay) : delay_(delay) {
  if (delay <= 0) throw std::invalid_argument("PolicyDelay: delay must be > 0");
}

bool PolicyDelay::Tick() {
  ++critic_steps_;
  if (critic_steps_ % delay_ == 0) {
    ++actor_updates_;
    return true;
  }
  return false;
}

bool Td3ActorStep(const Eigen::MatrixXd& states, const TwinCritic& critic,
                  double lr, PolicyDelay* delay, DeterministicPolicy* actor,
                  nn::AdamState* opt) {
  if (!delay->Tick()) return false;
  LossAndGrad lg = Td3ActorLoss(*actor, critic, states);
  nn::AdamStep(lg.grad, lr, &actor->trunk, opt);
  return true;
}

SacActorLoss SacActorLossAndGrad(const GaussianPolicy& policy,
                                 const TwinCritic& critic,
                                 const Eigen::MatrixXd& states,
                                 const Eigen::MatrixXd& eps, double alpha) {
  const Eigen::Index n = states.cols();
  const int adim = policy.action_dim;
  const double inv_n = 1.0 / static_cast<double>(n);
  GaussianPolicy::Sample s = policy.Rsample(states, eps);

  Eigen::VectorXd q1;
  Eigen::VectorXd q2;
  const Eigen::RowVectorXd unit = Eigen::RowVectorXd::Constant(n, 1.0);
  const Eigen::MatrixXd g1 =
      ActionGradient(critic.q1, states, s.actions, unit, &q1);
  const Eigen::MatrixXd g2 =
      ActionGradient(critic.q2, states, s.actions, unit, &q2);

  SacActorLoss out;
  Eigen::MatrixXd d_mean(adim, n);
  Eigen::MatrixXd d_log_std(adim, n);
  double loss = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const bool first = q1(j) <= q2(j);
    const double q = first ? q1(j) : q2(j);
    loss += alpha * s.log_probs(j) - q;
    for (int i = 0; i < adim; ++i) {
      const double dq_da = first ? g1(i, j) : g2(i, j);
      const double a = s.actions(i, j);
      const double dq_du = dq_da * (1.0 - a * a);
      // d log pi / d u = 2 tanh(u); d u / d log_std = std * eps.
      const double dlogp_du = 2.0 * a;
      const double du_dls = std::exp(s.log_std(i, j)) * s.eps(i, j);
      const double dl_du = alpha * dlogp_du - dq_du;
      d_mean(i, j) = inv_n * dl_du;
      d_log_std(i, j) =
          inv_n * (dl_du * du_dls - alpha) * s.clamp_mask(i, j);
    }
  }
  out.loss = loss * inv_n;
  out.mean_log_prob = s.log_probs.mean();
  Eigen::MatrixXd d_out(2 * adim, n);
  d_out << d_mean, d_log_std;
  out.grad = nn::Backward(policy.trunk, s.cache, d_out);
  return out;
}

SacActorLoss SacActorStep(const Eigen::MatrixXd& states,
                          const TwinCritic& critic, double alpha, double lr,
                          Rng& rng, GaussianPolicy* policy,
                          nn::AdamState* opt) {
  const Eigen::MatrixXd eps =
      StandardNormalMatrix(rng, policy->action_dim, states.cols());
  SacActorLoss out = SacActorLossAndGrad(*policy, critic, states, eps, alpha);
  nn::AdamStep(out.grad, lr, &policy->trunk, opt);
  return out;
}

LossAndGrad Td3BcActorLoss(const DeterministicPolicy& actor,
                           const TwinCritic& critic,
                           const Eigen::MatrixXd& states,
                           const Eigen::MatrixXd& actions, double lambda) {
  const Eigen::Index n = states.cols();
  const double inv_n = 1.0 / static_cast<double>(n);
  nn::ForwardCache cache;
  const Eigen::MatrixXd act =
      nn::Forward(actor.trunk, states, &cache).array().tanh().matrix();
  Eigen::VectorXd q;
  const Eigen::MatrixXd dq_da = ActionGradient(
      critic.q1, states, act, Eigen::RowVectorXd::Constant(n, -lambda * inv_n),
      &q);
  const Eigen::MatrixXd diff = act - actions;
  LossAndGrad out;
  out.loss = -lambda * q.mean() + diff.squaredNorm() * inv_n;
  const Eigen::MatrixXd d_act = dq_da + 2.0 * inv_n * diff;
  out.grad = nn::Backward(
      actor.trunk, cache,
      d_act.cwiseProduct((1.0 - act.array().square()).matrix()));
  return out;
}

double Td3BcLambda(const DeterministicPolicy& actor, const TwinCritic& critic,
                   const Eigen::MatrixXd& states, double alpha_bc) {
  const Eigen::VectorXd q = critic.Q(0, states, actor.Act(states));
  const double scale = q.cwiseAbs().mean();
  return alpha_bc / std::max(scale, 1e-6);
}

double Td3BcActorStep(const Batch& demo_batch, const TwinCritic& critic,
                      double alpha_bc, double lr, DeterministicPolicy* actor,
                      nn::AdamState* opt) {
  const double lambda =
      Td3BcLambda(*actor, critic, demo_batch.states, alpha_bc);
  LossAndGrad lg = Td3BcActorLoss(*actor, critic, demo_batch.states,
                                  demo_batch.actions, lambda);
  nn::AdamStep(lg.grad, lr, &actor->trunk, opt);
  return lg.loss;
}

double AlphaLoss(double log_alpha, double mean_log_prob,
                 double target_entropy) {
  return -std::exp(log_alpha) * (mean_log_prob + target_entropy);
}

double AlphaGrad(double log_alpha, double mean_log_prob,
                 double target_entropy) {
  return -std::exp(log_alpha) * (mean_log_prob + target_entropy);
}

void AlphaStep(double mean_log_prob, double lr, Temperature* temp) {
  if (!temp->learnable) return;
  const double g =
      AlphaGrad(temp->log_alpha, mean_log_prob, temp->target_entropy);
  temp->log_alpha = temp->optimizer.Step(temp->log_alpha, g, lr);
}

}  // namespace drlr::agents

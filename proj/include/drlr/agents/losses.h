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

#ifndef DRLR_AGENTS_LOSSES_H_
#define DRLR_AGENTS_LOSSES_H_

#include <Eigen/Core>

#include "drlr/agents/networks.h"
#include "drlr/buffers/transition.h"
#include "drlr/nn/adam.h"
#include "drlr/nn/mlp.h"
#include "drlr/rng.h"

namespace drlr::agents {

struct LossAndGrad {
  double loss = 0.0;
  nn::Grad grad;
};

// ---- behavior cloning -------------------------------------------------------

// mean_b || mu(s_b) - a_b ||^2 and its gradient w.r.t. the policy trunk.
LossAndGrad BcLoss(const DeterministicPolicy& policy,
                   const Eigen::MatrixXd& states,
                   const Eigen::MatrixXd& actions);
double BcStep(const Batch& batch, double lr, DeterministicPolicy* policy,
              nn::AdamState* opt);

// ---- Bellman targets --------------------------------------------------------

// y = r + gamma * not_done * min(q1', q2')(s', a').
Eigen::VectorXd BootstrapTarget(const TwinCritic& target_critic,
                                const Batch& batch,
                                const Eigen::MatrixXd& next_actions,
                                double gamma);

// Target-policy smoothing noise: clip(N(0, std^2), -clip, clip).
Eigen::MatrixXd SmoothingNoise(int action_dim, int n, double noise_std,
                               double noise_clip, Rng& rng);

// TD3 target with an explicit smoothing-noise matrix.
Eigen::VectorXd Td3Target(const TwinCritic& target_critic,
                          const DeterministicPolicy& target_actor,
                          const Batch& batch, double gamma,
                          const Eigen::MatrixXd& noise);
Eigen::VectorXd Td3Target(const TwinCritic& target_critic,
                          const DeterministicPolicy& target_actor,
                          const Batch& batch, double gamma,
                          double noise_std, double noise_clip, Rng& rng);

// Soft target r + gamma * not_done * (min Q'(s', a') - alpha * log pi(a'|s'))
// for given next actions and their log-probabilities.
Eigen::VectorXd SacTarget(const TwinCritic& target_critic, const Batch& batch,
                          const Eigen::MatrixXd& next_actions,
                          const Eigen::VectorXd& next_log_probs, double gamma,
                          double alpha);
Eigen::VectorXd SacTarget(const TwinCritic& target_critic,
                          const GaussianPolicy& policy, const Batch& batch,
                          double gamma, double alpha, Rng& rng);

// ---- critic -----------------------------------------------------------------

struct CriticLoss {
  double loss = 0.0;
  nn::Grad q1;
  nn::Grad q2;
};

// 1/2 * mean over heads and batch of (Q(s, a) - y)^2.
CriticLoss CriticLossAndGrad(const TwinCritic& critic, const Batch& batch,
                             const Eigen::VectorXd& targets);
// Returns the loss before the update. Throws on non-finite targets.
double CriticStep(const Batch& batch, const Eigen::VectorXd& targets,
                  double lr, TwinCritic* critic, TwinCriticOptimizer* opt);

// ---- actors -----------------------------------------------------------------

// -mean q1(s, mu(s)).
LossAndGrad Td3ActorLoss(const DeterministicPolicy& actor,
                         const TwinCritic& critic,
                         const Eigen::MatrixXd& states);

// Counts critic steps and says when the delayed actor update is due.
class PolicyDelay {
 public:
  explicit PolicyDelay(int delay = 2);
  // Registers one critic step; true when the actor should update now.
  bool Tick();
  long critic_steps() const { return critic_steps_; }
  long actor_updates() const { return actor_updates_; }

 private:
  int delay_;
  long critic_steps_ = 0;
  long actor_updates_ = 0;
};

// Runs the actor step if `delay` says it is due. Returns true if it ran.
bool Td3ActorStep(const Eigen::MatrixXd& states, const TwinCritic& critic,
                  double lr, PolicyDelay* delay, DeterministicPolicy* actor,
                  nn::AdamState* opt);

struct SacActorLoss {
  double loss = 0.0;
  double mean_log_prob = 0.0;
  nn::Grad grad;
};

// mean[alpha * log pi(f(eps; s)|s) - min(q1, q2)(s, f(eps; s))] with the
// noise `eps` held fixed (reparameterization).
SacActorLoss SacActorLossAndGrad(const GaussianPolicy& policy,
                                 const TwinCritic& critic,
                                 const Eigen::MatrixXd& states,
                                 const Eigen::MatrixXd& eps, double alpha);
// Returns the loss and mean log-prob of the step's samples.
SacActorLoss SacActorStep(const Eigen::MatrixXd& states,
                          const TwinCritic& critic, double alpha, double lr,
                          Rng& rng, GaussianPolicy* policy,
                          nn::AdamState* opt);

// TD3+BC: -lambda * mean q1(s, mu(s)) + mean ||mu(s) - a||^2.
LossAndGrad Td3BcActorLoss(const DeterministicPolicy& actor,
                           const TwinCritic& critic,
                           const Eigen::MatrixXd& states,
                           const Eigen::MatrixXd& actions, double lambda);
// lambda = alpha_bc / mean |q1(s, mu(s))|, treated as a constant.
double Td3BcLambda(const DeterministicPolicy& actor, const TwinCritic& critic,
                   const Eigen::MatrixXd& states, double alpha_bc);
double Td3BcActorStep(const Batch& demo_batch, const TwinCritic& critic,
                      double alpha_bc, double lr, DeterministicPolicy* actor,
                      nn::AdamState* opt);

// ---- temperature ------------------------------------------------------------

// J(alpha) = -alpha * (mean_log_prob + target_entropy), alpha = exp(log_alpha).
double AlphaLoss(double log_alpha, double mean_log_prob, double target_entropy);
double AlphaGrad(double log_alpha, double mean_log_prob, double target_entropy);
// No-op unless temp->learnable.
void AlphaStep(double mean_log_prob, double lr, Temperature* temp);

}  // namespace drlr::agents

#endif  // DRLR_AGENTS_LOSSES_H_

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

#ifndef DRLR_TESTS_SUPPORT_ORACLES_H_
#define DRLR_TESTS_SUPPORT_ORACLES_H_

// Reference computations for tests. Losses here are rebuilt from nn::Forward
// and closed-form expressions only, so they do not share code with the
// analytic implementations they check.

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "drlr/agents/networks.h"
#include "drlr/buffers/transition.h"
#include "drlr/nn/mlp.h"
#include "drlr/rng.h"

namespace drlr::testing {

// |a - b| / max(|a|, |b|, floor).
double RelErr(double a, double b, double floor = 1e-4);

// Largest relative error between `analytic` (flattened gradient) and central
// differences of `loss` over `coords` random coordinates (all when <= 0).
// With `extrapolate`, central differences at h and h/2 are combined by
// Richardson extrapolation; otherwise plain central differences at h.
double MaxFdRelErr(const nn::MlpParams& params,
                   const Eigen::VectorXd& analytic,
                   const std::function<double(const nn::MlpParams&)>& loss,
                   int coords, Rng& rng, double h = 1e-3,
                   bool extrapolate = true);

// Smooth random networks for finite-difference checks.
nn::MlpParams SmallTanhNet(const std::vector<int>& sizes, std::uint64_t seed);
agents::DeterministicPolicy SmallPolicy(int state_dim, int action_dim,
                                        int width, std::uint64_t seed);
agents::GaussianPolicy SmallGaussian(int state_dim, int action_dim, int width,
                                     std::uint64_t seed);
agents::TwinCritic SmallCritic(int state_dim, int action_dim, int width,
                               std::uint64_t seed);

// Critic whose heads ignore their input and return c1 and c2.
agents::TwinCritic ConstantCritic(int state_dim, int action_dim, double c1,
                                  double c2);
// Both heads return -sum_i |a_i| (exact with one relu layer).
agents::TwinCritic NegAbsActionCritic(int state_dim, int action_dim);
// Both heads return `scale` * sum(s) + `shift`, independent of the action.
agents::TwinCritic StateLinearCritic(int state_dim, int action_dim,
                                     double scale, double shift);

Eigen::MatrixXd RandomMatrix(Rng& rng, int rows, int cols, double scale = 1.0);
Batch RandomBatch(Rng& rng, int state_dim, int action_dim, int n);

double OracleBcLoss(const nn::MlpParams& trunk, const Eigen::MatrixXd& s,
                    const Eigen::MatrixXd& a);
double OracleCriticLoss(const nn::MlpParams& q1, const nn::MlpParams& q2,
                        const Batch& batch, const Eigen::VectorXd& y);
double OracleTd3ActorLoss(const nn::MlpParams& actor,
                          const agents::TwinCritic& critic,
                          const Eigen::MatrixXd& s);
double OracleTd3BcLoss(const nn::MlpParams& actor,
                       const agents::TwinCritic& critic,
                       const Eigen::MatrixXd& s, const Eigen::MatrixXd& a,
                       double lambda);
// Squashed Gaussian with frozen noise: a = tanh(m + exp(clamp(ls)) eps),
// log pi = sum(-eps^2/2 - ls - log(2 pi)/2 - log(1 - a^2)).
double OracleSacActorLoss(const nn::MlpParams& trunk, int action_dim,
                          const agents::TwinCritic& critic,
                          const Eigen::MatrixXd& s, const Eigen::MatrixXd& eps,
                          double alpha);
Eigen::VectorXd OracleSquashedLogProb(const nn::MlpParams& trunk,
                                      int action_dim, const Eigen::MatrixXd& s,
                                      const Eigen::MatrixXd& eps);
double OracleAlphaLoss(double log_alpha, double mean_log_prob,
                       double target_entropy);

// P(ref) for a two-way Boltzmann choice.
double BoltzmannRefProbability(double q_ref, double q_rl, double temperature);

// Deterministic 2-state, 2-action chain: action +1 moves to state 1, action
// -1 to state 0; reward 1 for taking +1 in state 1. States are one-hot,
// actions are the scalars -1 and +1.
struct ChainMdp {
  double gamma = 0.9;
  static int Next(int state, int action_index);
  static double Reward(int state, int action_index);
  static double ActionValue(int action_index);
  // Q* by value iteration to machine precision; indexed [state][action].
  std::array<std::array<double, 2>, 2> OptimalQ() const;
  // All four transitions, non-terminal.
  Batch AllTransitions() const;
};

// Fits a twin critic to the chain MDP with exact targets from a frozen copy,
// bootstrapping through the optimal next action. `sac` selects the soft
// target with zero log-probabilities, otherwise the noise-free TD3 target.
agents::TwinCritic FitChainCritic(bool sac, double alpha);

// Unit step response of qdd + 2 qd + q = 1 from rest.
double CriticallyDampedStep(double t);

// Mean of |N(0, sigma^2)|.
double FoldedNormalMean(double sigma);

}  // namespace drlr::testing

#endif  // DRLR_TESTS_SUPPORT_ORACLES_H_

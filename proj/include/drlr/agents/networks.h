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

#ifndef DRLR_AGENTS_NETWORKS_H_
#define DRLR_AGENTS_NETWORKS_H_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "drlr/nn/adam.h"
#include "drlr/nn/mlp.h"
#include "drlr/rng.h"

namespace drlr::agents {

struct NetworkShape {
  int hidden_width = 64;
  int hidden_layers = 2;
};

std::vector<int> LayerSizes(int input_dim, int output_dim,
                            const NetworkShape& shape);

// mu(s) = tanh(trunk(s)), always inside [-1, 1].
struct DeterministicPolicy {
  nn::MlpParams trunk;

  static DeterministicPolicy Create(int state_dim, int action_dim,
                                    const NetworkShape& shape,
                                    std::uint64_t seed);
  int action_dim() const { return trunk.output_dim(); }
  Eigen::MatrixXd Act(const Eigen::MatrixXd& states) const;
  Eigen::VectorXd Act(const Eigen::VectorXd& state) const;
};

// Tanh-squashed Gaussian. The trunk emits [mean; log_std] per state, with
// log_std clamped to [kLogStdMin, kLogStdMax].
struct GaussianPolicy {
  static constexpr double kLogStdMin = -5.0;
  static constexpr double kLogStdMax = 2.0;

  nn::MlpParams trunk;
  int action_dim = 0;

  // Reparameterized draw a = tanh(mean + exp(log_std) * eps). Internals are
  // kept so losses can backpropagate through the sample.
  struct Sample {
    Eigen::MatrixXd actions;     // (action_dim, n)
    Eigen::VectorXd log_probs;   // n
    Eigen::MatrixXd mean;
    Eigen::MatrixXd log_std;     // after clamping
    Eigen::MatrixXd clamp_mask;  // 1 where log_std was inside the clamp
    Eigen::MatrixXd eps;
    Eigen::MatrixXd pre_tanh;
    nn::ForwardCache cache;
  };

  static GaussianPolicy Create(int state_dim, int action_dim,
                               const NetworkShape& shape, std::uint64_t seed);
  Sample Rsample(const Eigen::MatrixXd& states,
                 const Eigen::MatrixXd& eps) const;
  Sample Rsample(const Eigen::MatrixXd& states, Rng& rng) const;
  // Deterministic head tanh(mean).
  Eigen::MatrixXd MeanAction(const Eigen::MatrixXd& states) const;
  Eigen::VectorXd MeanAction(const Eigen::VectorXd& state) const;
};

// log(1 - tanh(u)^2) without cancellation for large |u|.
double LogOneMinusTanhSq(double u);

enum class QReduce { kMin, kMean };

// Two independent Q heads over the input [state; action].
struct TwinCritic {
  nn::MlpParams q1;
  nn::MlpParams q2;

  static TwinCritic Create(int state_dim, int action_dim,
                           const NetworkShape& shape, std::uint64_t seed);
  int state_dim() const;
  Eigen::VectorXd Q(int head, const Eigen::MatrixXd& states,
                    const Eigen::MatrixXd& actions) const;
  Eigen::VectorXd Reduced(QReduce reduce, const Eigen::MatrixXd& states,
                          const Eigen::MatrixXd& actions) const;
};

Eigen::MatrixXd CriticInput(const Eigen::MatrixXd& states,
                            const Eigen::MatrixXd& actions);

struct TwinCriticOptimizer {
  nn::AdamState q1;
  nn::AdamState q2;
  static TwinCriticOptimizer For(const TwinCritic& critic);
};

// Entropy temperature, alpha = exp(log_alpha).
struct Temperature {
  double log_alpha = 0.0;
  bool learnable = false;
  double target_entropy = 0.0;
  nn::ScalarAdam optimizer;

  static Temperature Create(double initial_alpha, bool learnable,
                            double target_entropy);
  double alpha() const;
};

}  // namespace drlr::agents

#endif  // DRLR_AGENTS_NETWORKS_H_

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

#include "drlr/agents/networks.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace drlr::agents {

std::vector<int> LayerSizes(int input_dim, int output_dim,
                            const NetworkShape& shape) {
  std::vector<int> sizes{input_dim};
  for (int i = 0; i < shape.hidden_layers; ++i) {
    sizes.push_back(shape.hidden_width);
  }
  sizes.push_back(output_dim);
  return sizes;
}

DeterministicPolicy DeterministicPolicy::Create(int state_dim, int action_dim,
                                                const NetworkShape& shape,
                                                std::uint64_t seed) {
  return {nn::InitParams(LayerSizes(state_dim, action_dim, shape),
                         nn::Activation::kRelu, seed)};
}

Eigen::MatrixXd DeterministicPolicy::Act(const Eigen::MatrixXd& states) const {
  return nn::Forward(trunk, states).array().tanh().matrix();
}

Eigen::VectorXd DeterministicPolicy::Act(const Eigen::VectorXd& state) const {
  return Act(Eigen::MatrixXd(state)).col(0);
}

double LogOneMinusTanhSq(double u) {
  // log(1 - tanh^2 u) = 2 (log 2 - u - softplus(-2u))
  const double x = -2.0 * u;
  const double softplus = x > 30.0 ? x : std::log1p(std::exp(x));
  return 2.0 * (std::numbers::ln2 - u - softplus);
}

GaussianPolicy GaussianPolicy::Create(int state_dim, int action_dim,
                                      const NetworkShape& shape,
                                      std::uint64_t seed) {
  GaussianPolicy p;
  p.trunk = nn::InitParams(LayerSizes(state_dim, 2 * action_dim, shape),
                           nn::Activation::kRelu, seed);
  p.action_dim = action_dim;
  return p;
}

GaussianPolicy::Sample GaussianPolicy::Rsample(
    const Eigen::MatrixXd& states, const Eigen::MatrixXd& eps) const {
  Sample s;
  const Eigen::MatrixXd out = nn::Forward(trunk, states, &s.cache);
  const Eigen::Index n = states.cols();
  if (eps.rows() != action_dim || eps.cols() != n) {
    throw std::invalid_argument("GaussianPolicy: eps shape mismatch");
  }
  s.mean = out.topRows(action_dim);
  const Eigen::MatrixXd raw_log_std = out.bottomRows(action_dim);
  s.log_std = raw_log_std.cwiseMax(kLogStdMin).cwiseMin(kLogStdMax);
  s.clamp_mask = ((raw_log_std.array() > kLogStdMin) &&
                  (raw_log_std.array() < kLogStdMax))
                     .cast<double>()
                     .matrix();
  s.eps = eps;
  s.pre_tanh = s.mean + (s.log_std.array().exp() * eps.array()).matrix();
  // tanh rounds to exactly +-1 for large |u|; keep samples strictly inside.
  const double edge = std::nextafter(1.0, 0.0);
  s.actions = s.pre_tanh.array().tanh().cwiseMax(-edge).cwiseMin(edge).matrix();
  s.log_probs.resize(n);
  const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
  for (Eigen::Index j = 0; j < n; ++j) {
    double lp = 0.0;
    for (int i = 0; i < action_dim; ++i) {
      lp += -0.5 * eps(i, j) * eps(i, j) - s.log_std(i, j) - half_log_2pi -
            LogOneMinusTanhSq(s.pre_tanh(i, j));
    }
    s.log_probs(j) = lp;
  }
  return s;
}

GaussianPolicy::Sample GaussianPolicy::Rsample(const Eigen::MatrixXd& states,
                                               Rng& rng) const {
  return Rsample(states, StandardNormalMatrix(rng, action_dim, states.cols()));
}

Eigen::MatrixXd GaussianPolicy::MeanAction(const Eigen::MatrixXd& states) const {
  return nn::Forward(trunk, states).topRows(action_dim).array().tanh().matrix();
}

Eigen::VectorXd GaussianPolicy::MeanAction(const Eigen::VectorXd& state) const {
  return MeanAction(Eigen::MatrixXd(state)).col(0);
}

TwinCritic TwinCritic::Create(int state_dim, int action_dim,
                              const NetworkShape& shape, std::uint64_t seed) {
  const auto sizes = LayerSizes(state_dim + action_dim, 1, shape);
  return {nn::InitParams(sizes, nn::Activation::kRelu, seed),
          nn::InitParams(sizes, nn::Activation::kRelu, seed + 1)};
}

int TwinCritic::state_dim() const { return q1.input_dim(); }

Eigen::MatrixXd CriticInput(const Eigen::MatrixXd& states,
                            const Eigen::MatrixXd& actions) {
  if (states.cols() != actions.cols()) {
    throw std::invalid_argument("CriticInput: batch size mismatch");
  }
  Eigen::MatrixXd x(states.rows() + actions.rows(), states.cols());
  x << states, actions;
  return x;
}

Eigen::VectorXd TwinCritic::Q(int head, const Eigen::MatrixXd& states,
                              const Eigen::MatrixXd& actions) const {
  const nn::MlpParams& p = head == 0 ? q1 : q2;
  return nn::Forward(p, CriticInput(states, actions)).row(0).transpose();
}

Eigen::VectorXd TwinCritic::Reduced(QReduce reduce,
                                    const Eigen::MatrixXd& states,
                                    const Eigen::MatrixXd& actions) const {
  const Eigen::MatrixXd x = CriticInput(states, actions);
  const Eigen::VectorXd a = nn::Forward(q1, x).row(0).transpose();
  const Eigen::VectorXd b = nn::Forward(q2, x).row(0).transpose();
  return reduce == QReduce::kMin ? a.cwiseMin(b).eval()
                                 : (0.5 * (a + b)).eval();
}

TwinCriticOptimizer TwinCriticOptimizer::For(const TwinCritic& critic) {
  return {nn::AdamState::For(critic.q1), nn::AdamState::For(critic.q2)};
}

Temperature Temperature::Create(double initial_alpha, bool learnable,
                                double target_entropy) {
  if (!(initial_alpha > 0.0)) {
    throw std::invalid_argument("Temperature: initial alpha must be > 0");
  }
  Temperature t;
  t.log_alpha = std::log(initial_alpha);
  t.learnable = learnable;
  t.target_entropy = target_entropy;
  return t;
}

double Temperature::alpha() const { return std::exp(log_alpha); }

}  // namespace drlr::agents

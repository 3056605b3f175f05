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

#include "drlr/nn/mlp.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace drlr::nn {
namespace {

Eigen::MatrixXd Activate(Activation act, const Eigen::MatrixXd& z) {
  switch (act) {
    case Activation::kRelu:
      return z.cwiseMax(0.0);
    case Activation::kTanh:
      return z.array().tanh().matrix();
    case Activation::kIdentity:
      return z;
  }
  return z;
}

// d activation / d z evaluated at the pre-activation z, multiplied into g.
void MultiplyDerivative(Activation act, const Eigen::MatrixXd& z,
                        Eigen::MatrixXd* g) {
  switch (act) {
    case Activation::kRelu:
      *g = g->cwiseProduct((z.array() > 0.0).cast<double>().matrix());
      return;
    case Activation::kTanh:
      *g = g->cwiseProduct(
          (1.0 - z.array().tanh().square()).matrix());
      return;
    case Activation::kIdentity:
      return;
  }
}

}  // namespace

int MlpParams::num_parameters() const {
  int n = 0;
  for (int k = 0; k < num_layers(); ++k) {
    n += static_cast<int>(weights[k].size() + biases[k].size());
  }
  return n;
}

Grad Grad::ZerosLike(const MlpParams& params) {
  Grad g;
  for (int k = 0; k < params.num_layers(); ++k) {
    g.weights.push_back(Eigen::MatrixXd::Zero(params.weights[k].rows(),
                                              params.weights[k].cols()));
    g.biases.push_back(Eigen::VectorXd::Zero(params.biases[k].size()));
  }
  return g;
}

void Grad::Add(const Grad& other) {
  for (size_t k = 0; k < weights.size(); ++k) {
    weights[k] += other.weights[k];
    biases[k] += other.biases[k];
  }
}

void Grad::Scale(double factor) {
  for (size_t k = 0; k < weights.size(); ++k) {
    weights[k] *= factor;
    biases[k] *= factor;
  }
  input *= factor;
}

void ValidateShapes(const MlpParams& params) {
  const auto& sizes = params.layer_sizes;
  if (sizes.size() < 2) {
    throw std::invalid_argument("MlpParams needs at least 2 layer sizes");
  }
  if (params.weights.size() + 1 != sizes.size() ||
      params.biases.size() + 1 != sizes.size()) {
    throw std::invalid_argument("MlpParams layer count mismatch");
  }
  for (size_t k = 0; k + 1 < sizes.size(); ++k) {
    if (sizes[k] <= 0 || sizes[k + 1] <= 0) {
      throw std::invalid_argument("layer sizes must be positive");
    }
    if (params.weights[k].rows() != sizes[k + 1] ||
        params.weights[k].cols() != sizes[k] ||
        params.biases[k].size() != sizes[k + 1]) {
      throw std::invalid_argument("shape mismatch in layer " +
                                  std::to_string(k));
    }
  }
}

Eigen::MatrixXd Forward(const MlpParams& params, const Eigen::MatrixXd& input,
                        ForwardCache* cache) {
  if (input.rows() != params.input_dim()) {
    throw std::invalid_argument(
        "Forward: input has " + std::to_string(input.rows()) +
        " rows, network expects " + std::to_string(params.input_dim()));
  }
  if (cache != nullptr) {
    cache->layer_inputs.clear();
    cache->pre_activations.clear();
  }
  Eigen::MatrixXd x = input;
  const int last = params.num_layers() - 1;
  for (int k = 0; k <= last; ++k) {
    Eigen::MatrixXd z = params.weights[k] * x;
    z.colwise() += params.biases[k];
    Eigen::MatrixXd next =
        k == last ? z : Activate(params.activation, z);
    if (cache != nullptr) {
      cache->layer_inputs.push_back(std::move(x));
      cache->pre_activations.push_back(std::move(z));
    }
    x = std::move(next);
  }
  return x;
}

Eigen::VectorXd Forward(const MlpParams& params, const Eigen::VectorXd& input) {
  Eigen::MatrixXd out = Forward(params, Eigen::MatrixXd(input), nullptr);
  return out.col(0);
}

Grad Backward(const MlpParams& params, const ForwardCache& cache,
              const Eigen::MatrixXd& output_grad) {
  const int n = params.num_layers();
  if (static_cast<int>(cache.layer_inputs.size()) != n) {
    throw std::invalid_argument("Backward: cache does not match network");
  }
  if (output_grad.rows() != params.output_dim() ||
      output_grad.cols() != cache.layer_inputs.front().cols()) {
    throw std::invalid_argument("Backward: output_grad shape mismatch");
  }
  Grad grad;
  grad.weights.resize(n);
  grad.biases.resize(n);
  Eigen::MatrixXd g = output_grad;
  for (int k = n - 1; k >= 0; --k) {
    if (k != n - 1) {
      MultiplyDerivative(params.activation, cache.pre_activations[k], &g);
    }
    grad.weights[k].noalias() = g * cache.layer_inputs[k].transpose();
    grad.biases[k] = g.rowwise().sum();
    Eigen::MatrixXd prev = params.weights[k].transpose() * g;
    g = std::move(prev);
  }
  grad.input = std::move(g);
  return grad;
}

MlpParams InitParams(const std::vector<int>& layer_sizes,
                     Activation activation, std::uint64_t seed) {
  MlpParams params;
  params.layer_sizes = layer_sizes;
  params.activation = activation;
  if (layer_sizes.size() < 2) {
    throw std::invalid_argument("InitParams needs at least 2 layer sizes");
  }
  std::mt19937_64 rng(seed);
  const int n = static_cast<int>(layer_sizes.size()) - 1;
  for (int k = 0; k < n; ++k) {
    const int fan_in = layer_sizes[k];
    const int fan_out = layer_sizes[k + 1];
    if (fan_in <= 0 || fan_out <= 0) {
      throw std::invalid_argument("layer sizes must be positive");
    }
    const bool relu_hidden = activation == Activation::kRelu && k < n - 1;
    const double bound = std::sqrt((relu_hidden ? 6.0 : 3.0) / fan_in);
    std::uniform_real_distribution<double> dist(-bound, bound);
    Eigen::MatrixXd w(fan_out, fan_in);
    for (int j = 0; j < fan_in; ++j) {
      for (int i = 0; i < fan_out; ++i) w(i, j) = dist(rng);
    }
    params.weights.push_back(std::move(w));
    params.biases.push_back(Eigen::VectorXd::Zero(fan_out));
  }
  return params;
}

void PolyakUpdate(const MlpParams& online, double tau, MlpParams* target) {
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw std::invalid_argument("PolyakUpdate: tau must lie in (0, 1]");
  }
  if (online.layer_sizes != target->layer_sizes) {
    throw std::invalid_argument("PolyakUpdate: shape mismatch");
  }
  for (int k = 0; k < online.num_layers(); ++k) {
    if (tau == 1.0) {
      target->weights[k] = online.weights[k];
      target->biases[k] = online.biases[k];
    } else {
      target->weights[k] = tau * online.weights[k] + (1.0 - tau) * target->weights[k];
      target->biases[k] = tau * online.biases[k] + (1.0 - tau) * target->biases[k];
    }
  }
}

bool AllFinite(const MlpParams& params) {
  for (int k = 0; k < params.num_layers(); ++k) {
    if (!params.weights[k].allFinite() || !params.biases[k].allFinite()) {
      return false;
    }
  }
  return true;
}

Eigen::VectorXd Flatten(const MlpParams& params) {
  Eigen::VectorXd flat(params.num_parameters());
  Eigen::Index pos = 0;
  for (int k = 0; k < params.num_layers(); ++k) {
    const auto& w = params.weights[k];
    flat.segment(pos, w.size()) = w.reshaped();
    pos += w.size();
    flat.segment(pos, params.biases[k].size()) = params.biases[k];
    pos += params.biases[k].size();
  }
  return flat;
}

Eigen::VectorXd Flatten(const Grad& grad) {
  Eigen::Index total = 0;
  for (size_t k = 0; k < grad.weights.size(); ++k) {
    total += grad.weights[k].size() + grad.biases[k].size();
  }
  Eigen::VectorXd flat(total);
  Eigen::Index pos = 0;
  for (size_t k = 0; k < grad.weights.size(); ++k) {
    flat.segment(pos, grad.weights[k].size()) = grad.weights[k].reshaped();
    pos += grad.weights[k].size();
    flat.segment(pos, grad.biases[k].size()) = grad.biases[k];
    pos += grad.biases[k].size();
  }
  return flat;
}

void Unflatten(const Eigen::VectorXd& flat, MlpParams* params) {
  if (flat.size() != params->num_parameters()) {
    throw std::invalid_argument("Unflatten: size mismatch");
  }
  Eigen::Index pos = 0;
  for (int k = 0; k < params->num_layers(); ++k) {
    auto& w = params->weights[k];
    w.reshaped() = flat.segment(pos, w.size());
    pos += w.size();
    params->biases[k] = flat.segment(pos, params->biases[k].size());
    pos += params->biases[k].size();
  }
}

}  // namespace drlr::nn

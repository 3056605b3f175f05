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

#ifndef DRLR_NN_MLP_H_
#define DRLR_NN_MLP_H_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace drlr::nn {

enum class Activation { kRelu, kTanh, kIdentity };

// Dense feed-forward network. Hidden layers share one activation, the output
// layer is always linear. Batches are stored column-wise: an input matrix has
// shape (layer_sizes.front(), batch).
struct MlpParams {
  std::vector<int> layer_sizes;
  std::vector<Eigen::MatrixXd> weights;  // weights[k]: (sizes[k+1], sizes[k])
  std::vector<Eigen::VectorXd> biases;   // biases[k]: sizes[k+1]
  Activation activation = Activation::kRelu;

  int num_layers() const { return static_cast<int>(weights.size()); }
  int input_dim() const { return layer_sizes.front(); }
  int output_dim() const { return layer_sizes.back(); }
  int num_parameters() const;
};

// Gradient of a scalar loss with respect to every parameter of an MlpParams
// and, when produced by Backward, with respect to the network input.
struct Grad {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
  Eigen::MatrixXd input;

  // Zero gradient shaped like `params`.
  static Grad ZerosLike(const MlpParams& params);
  void Add(const Grad& other);
  void Scale(double factor);
};

// Activation trace recorded by Forward and consumed by Backward.
struct ForwardCache {
  std::vector<Eigen::MatrixXd> layer_inputs;     // input to layer k
  std::vector<Eigen::MatrixXd> pre_activations;  // W_k x + b_k
};

// Throws std::invalid_argument when the shapes break the MlpParams invariants.
void ValidateShapes(const MlpParams& params);

Eigen::MatrixXd Forward(const MlpParams& params, const Eigen::MatrixXd& input,
                        ForwardCache* cache = nullptr);
Eigen::VectorXd Forward(const MlpParams& params, const Eigen::VectorXd& input);

// Reverse-mode gradient of sum(output .* output_grad), summed over the batch.
Grad Backward(const MlpParams& params, const ForwardCache& cache,
              const Eigen::MatrixXd& output_grad);

// Fan-in scaled uniform initialization with zero biases. Hidden layers with
// relu use the bound sqrt(6 / fan_in); other layers use sqrt(3 / fan_in).
MlpParams InitParams(const std::vector<int>& layer_sizes,
                     Activation activation, std::uint64_t seed);

// target <- tau * online + (1 - tau) * target. tau must lie in (0, 1].
void PolyakUpdate(const MlpParams& online, double tau, MlpParams* target);

bool AllFinite(const MlpParams& params);

// Flat views used by optimizers and finite-difference checks. The order is
// layer by layer, weights (column-major) then biases.
Eigen::VectorXd Flatten(const MlpParams& params);
Eigen::VectorXd Flatten(const Grad& grad);
void Unflatten(const Eigen::VectorXd& flat, MlpParams* params);

}  // namespace drlr::nn

#endif  // DRLR_NN_MLP_H_

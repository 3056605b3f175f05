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

#ifndef DRLR_BUFFERS_TRANSITION_H_
#define DRLR_BUFFERS_TRANSITION_H_

#include <vector>

#include <Eigen/Core>

namespace drlr {

// One environment step. Actions are normalized to [-1, 1] per dimension.
// `terminal` marks true termination only; time-limit truncation is stored as
// terminal = false so targets keep bootstrapping through it.
struct Transition {
  Eigen::VectorXd state;
  Eigen::VectorXd action;
  double reward = 0.0;
  Eigen::VectorXd next_state;
  bool terminal = false;
};

// Throws std::invalid_argument on a dimension mismatch or non-finite entry.
void ValidateTransition(const Transition& t, int state_dim, int action_dim);

// Column-stacked minibatch.
struct Batch {
  Eigen::MatrixXd states;       // (state_dim, n)
  Eigen::MatrixXd actions;      // (action_dim, n)
  Eigen::VectorXd rewards;      // n
  Eigen::MatrixXd next_states;  // (state_dim, n)
  Eigen::VectorXd not_done;     // n, 1 - terminal

  int size() const { return static_cast<int>(rewards.size()); }
};

Batch MakeBatch(const std::vector<const Transition*>& items);
// Concatenates two batches column-wise (`first` columns come first).
Batch Concat(const Batch& first, const Batch& second);

}  // namespace drlr

#endif  // DRLR_BUFFERS_TRANSITION_H_

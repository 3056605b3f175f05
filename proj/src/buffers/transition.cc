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

#include "drlr/buffers/transition.h"

#include <cmath>
#include <stdexcept>

namespace drlr {

void ValidateTransition(const Transition& t, int state_dim, int action_dim) {
  if (t.state.size() != state_dim || t.next_state.size() != state_dim) {
    throw std::invalid_argument("transition: state dimension mismatch");
  }
  if (t.action.size() != action_dim) {
    throw std::invalid_argument("transition: action dimension mismatch");
  }
  if (!t.state.allFinite() || !t.next_state.allFinite() ||
      !t.action.allFinite() || !std::isfinite(t.reward)) {
    throw std::invalid_argument("transition: non-finite entry");
  }
}

Batch MakeBatch(const std::vector<const Transition*>& items) {
  if (items.empty()) throw std::invalid_argument("MakeBatch: empty batch");
  const auto n = static_cast<Eigen::Index>(items.size());
  const auto sdim = items.front()->state.size();
  const auto adim = items.front()->action.size();
  Batch b;
  b.states.resize(sdim, n);
  b.actions.resize(adim, n);
  b.rewards.resize(n);
  b.next_states.resize(sdim, n);
  b.not_done.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Transition& t = *items[j];
    b.states.col(j) = t.state;
    b.actions.col(j) = t.action;
    b.rewards(j) = t.reward;
    b.next_states.col(j) = t.next_state;
    b.not_done(j) = t.terminal ? 0.0 : 1.0;
  }
  return b;
}

Batch Concat(const Batch& first, const Batch& second) {
  if (first.size() == 0) return second;
  if (second.size() == 0) return first;
  Batch b;
  auto hcat = [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    Eigen::MatrixXd out(x.rows(), x.cols() + y.cols());
    out << x, y;
    return out;
  };
  auto vcat = [](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    Eigen::VectorXd out(x.size() + y.size());
    out << x, y;
    return out;
  };
  b.states = hcat(first.states, second.states);
  b.actions = hcat(first.actions, second.actions);
  b.rewards = vcat(first.rewards, second.rewards);
  b.next_states = hcat(first.next_states, second.next_states);
  b.not_done = vcat(first.not_done, second.not_done);
  return b;
}

}  // namespace drlr

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

#include "drlr/buffers/replay_buffer.h"

#include <algorithm>
#include <stdexcept>

namespace drlr {

ReplayBuffer::ReplayBuffer(std::size_t capacity, int state_dim, int action_dim)
    : capacity_(capacity), state_dim_(state_dim), action_dim_(action_dim) {
  if (capacity == 0) {
    throw std::invalid_argument("ReplayBuffer: capacity must be positive");
  }
  storage_.reserve(std::min<std::size_t>(capacity, 1 << 16));
}

void ReplayBuffer::Push(Transition t) {
  ValidateTransition(t, state_dim_, action_dim_);
  if (count_ < capacity_) {
    storage_.push_back(std::move(t));
    ++count_;
    return;
  }
  storage_[head_] = std::move(t);
  head_ = (head_ + 1) % capacity_;
}

const Transition& ReplayBuffer::at(std::size_t i) const {
  if (i >= count_) throw std::out_of_range("ReplayBuffer::at");
  return storage_[(head_ + i) % count_];
}

std::vector<std::size_t> ReplayBuffer::SampleIndices(int n, Rng& rng) const {
  if (count_ == 0) throw std::runtime_error("ReplayBuffer: sample from empty");
  if (n <= 0) throw std::invalid_argument("ReplayBuffer: n must be positive");
  std::vector<std::size_t> idx(n);
  for (auto& i : idx) i = UniformIndex(rng, count_);
  return idx;
}

Batch ReplayBuffer::Sample(int n, Rng& rng) const {
  std::vector<const Transition*> items;
  for (std::size_t i : SampleIndices(n, rng)) items.push_back(&storage_[i]);
  return MakeBatch(items);
}

}  // namespace drlr

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

#ifndef DRLR_BUFFERS_REPLAY_BUFFER_H_
#define DRLR_BUFFERS_REPLAY_BUFFER_H_

#include <cstddef>
#include <vector>

#include "drlr/buffers/transition.h"
#include "drlr/rng.h"

namespace drlr {

// Fixed-capacity FIFO ring of online transitions.
class ReplayBuffer {
 public:
  ReplayBuffer(std::size_t capacity, int state_dim, int action_dim);

  void Push(Transition t);

  // Uniform sampling with replacement. Throws std::runtime_error when empty.
  Batch Sample(int n, Rng& rng) const;
  std::vector<std::size_t> SampleIndices(int n, Rng& rng) const;

  // i-th oldest stored transition.
  const Transition& at(std::size_t i) const;
  std::size_t size() const { return count_; }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return count_ == 0; }

 private:
  std::size_t capacity_;
  int state_dim_;
  int action_dim_;
  std::vector<Transition> storage_;
  std::size_t head_ = 0;  // next write slot once full
  std::size_t count_ = 0;
};

}  // namespace drlr

#endif  // DRLR_BUFFERS_REPLAY_BUFFER_H_

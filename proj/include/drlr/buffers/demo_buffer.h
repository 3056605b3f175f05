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

#ifndef DRLR_BUFFERS_DEMO_BUFFER_H_
#define DRLR_BUFFERS_DEMO_BUFFER_H_

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "drlr/buffers/transition.h"
#include "drlr/rng.h"

namespace drlr {

// Immutable set of expert transitions grouped into episodes.
class DemoBuffer {
 public:
  DemoBuffer() = default;
  // Each inner vector is one episode, in step order.
  DemoBuffer(int state_dim, int action_dim,
             const std::vector<std::vector<Transition>>& episodes);

  int state_dim() const { return state_dim_; }
  int action_dim() const { return action_dim_; }
  std::size_t size() const { return transitions_.size(); }
  bool empty() const { return transitions_.empty(); }
  std::size_t num_episodes() const { return episode_starts_.size(); }

  const Transition& at(std::size_t i) const { return transitions_[i]; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  // Start offset of every episode; episode e spans
  // [episode_starts()[e], episode_end(e)).
  const std::vector<std::size_t>& episode_starts() const {
    return episode_starts_;
  }
  std::size_t episode_end(std::size_t e) const;
  std::vector<Transition> episode(std::size_t e) const;
  std::vector<std::vector<Transition>> episodes() const;

  Batch Sample(int n, Rng& rng) const;
  std::vector<std::size_t> SampleIndices(int n, Rng& rng) const;

 private:
  int state_dim_ = 0;
  int action_dim_ = 0;
  std::vector<Transition> transitions_;
  std::vector<std::size_t> episode_starts_;
};

// Text demo file, version 1:
//   drlr-demo v1 state_dim=<n> action_dim=<m>
//   ep=<k> s=<csv> a=<csv> r=<float> s2=<csv> term=<0|1>
// Numbers use 17 significant digits, so save/load is bit-exact.
void SaveDemos(const DemoBuffer& demo, const std::string& path);
DemoBuffer LoadDemos(const std::string& path);

enum class Corruption { kHalfRandom, kNoisy };

// Produces one uniform-random-action episode of the demo's environment.
using RandomRolloutFn = std::function<std::vector<Transition>(Rng&)>;

// kHalfRandom swaps floor(E/2) uniformly chosen episodes for random rollouts
// (`random_rollout` required). kNoisy adds N(0, level^2) noise to every action
// and clips back to [-1, 1]. The input buffer is never modified.
DemoBuffer CorruptDemos(const DemoBuffer& demo, Corruption mode, double level,
                        Rng& rng, const RandomRolloutFn& random_rollout = {});

}  // namespace drlr

#endif  // DRLR_BUFFERS_DEMO_BUFFER_H_

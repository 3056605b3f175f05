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

#ifndef DRLR_HARNESS_RUN_CONFIG_H_
#define DRLR_HARNESS_RUN_CONFIG_H_

#include <map>
#include <string>
#include <vector>

#include "drlr/buffers/demo_buffer.h"
#include "drlr/core/trainer.h"

namespace drlr::harness {

struct CorruptionSpec {
  bool enabled = false;
  Corruption mode = Corruption::kNoisy;
  double level = 0.0;
};

// "none", "half_random" or "noisy:<std>". Throws std::invalid_argument.
CorruptionSpec ParseCorruption(const std::string& text);
std::string FormatCorruption(const CorruptionSpec& spec);

struct RunConfig {
  // Registry name with optional reward suffix, e.g. "arm_drawer:sparse".
  std::string env = "point_reach";
  std::string demo_file;
  std::string demo_corruption = "none";
  core::TrainConfig train;
};

// Per-environment defaults: step budget, initial temperature, whether it is
// learned, replay capacity.
void ApplyEnvDefaults(const std::string& env, RunConfig* cfg);
RunConfig DefaultRunConfig(const std::string& env,
                           core::Algo algo = core::Algo::kDrlrSac);

// Every key accepted by ParseRunConfig, in file order.
std::vector<std::string> RunConfigKeys();

// Flat key=value text. '#' starts a comment. Environment defaults are applied
// first, then every key in the text; unknown keys, duplicates and malformed
// values throw std::invalid_argument naming the field.
RunConfig ParseRunConfig(const std::string& text);
RunConfig LoadRunConfig(const std::string& path);
// Every key with its resolved value; ParseRunConfig(FormatRunConfig(c)) == c.
std::string FormatRunConfig(const RunConfig& cfg);

// Throws std::invalid_argument naming the offending field.
void Validate(const RunConfig& cfg);

}  // namespace drlr::harness

#endif  // DRLR_HARNESS_RUN_CONFIG_H_

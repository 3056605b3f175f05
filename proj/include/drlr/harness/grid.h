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

#ifndef DRLR_HARNESS_GRID_H_
#define DRLR_HARNESS_GRID_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "drlr/harness/run_config.h"
#include "drlr/harness/runner.h"

namespace drlr::harness {

std::vector<std::string> PresetNames();

struct GridOptions {
  // Registry name; a missing reward suffix means sparse.
  std::string env = "point_reach";
  std::vector<std::uint64_t> seeds = {10, 11, 12};
  std::string demo_file;
  // Override the environment's default online step budget.
  std::optional<std::int64_t> total_steps;
  // Gradient steps for the offline algorithms of expD.
  std::int64_t offline_steps = 10000;
  // Evaluations per run, spread evenly over the budget.
  int evals_per_run = 10;
};

// expB: ibrl_td3 vs drlr_td3. expC: ibrl_td3, drlr_td3, ibrl_sac, drlr_sac.
// expD: {bc, td3bc} x {none, half_random, noisy:0.3}. Seeds vary fastest.
// Throws std::invalid_argument for an unknown preset (listing the presets)
// or a dense environment in expB.
std::vector<RunConfig> Grid(const std::string& preset,
                            const GridOptions& options);

// Directory name of a run inside a grid output root.
std::string RunName(const RunConfig& cfg);

// Runs every config into out_root/RunName(cfg) with up to `workers` parallel
// runs. Failures to start a run are returned in `errors`, not thrown.
std::vector<RunSummary> RunGrid(const std::vector<RunConfig>& configs,
                                const std::string& out_root, int workers,
                                std::vector<std::string>* errors);

}  // namespace drlr::harness

#endif  // DRLR_HARNESS_GRID_H_

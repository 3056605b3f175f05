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

#ifndef DRLR_HARNESS_RUNNER_H_
#define DRLR_HARNESS_RUNNER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "drlr/harness/run_config.h"

namespace drlr::harness {

struct RunSummary {
  std::string run_dir;
  std::string env;
  std::string algo;
  std::string demo_corruption;
  std::uint64_t seed = 0;
  double final_mean_return = 0.0;
  double final_std_return = 0.0;
  double success_rate = 0.0;
  std::int64_t steps_done = 0;
  // Relative to run_dir.
  std::string metrics_file = "metrics.csv";
  double wall_clock_s = 0.0;
  std::optional<std::string> failure;
};

// Every field except run_dir and wall-clock time.
bool SameOutcome(const RunSummary& a, const RunSummary& b);

// Output root: $DRLR_OUT when set, else "runs".
std::string DefaultOutRoot();

// Git blob hash (SHA-1 of "blob <size>\0" + bytes) in hex.
std::string GitBlobHash(const std::string& bytes);
std::string CodeVersion();

// Loads the demo file and applies the configured corruption. Corruption
// draws come from a stream derived from the run seed.
DemoBuffer PrepareDemos(const RunConfig& cfg);

// Validates, trains, and writes into run_dir: config.txt, metadata.txt,
// metrics.csv, checkpoint_initial.bin, checkpoint_final.bin, summary.txt.
RunSummary Run(const RunConfig& cfg, const std::string& run_dir);

void WriteSummary(const std::string& path, const RunSummary& s);
// Throws std::runtime_error on a missing or malformed file.
RunSummary ReadSummary(const std::string& path);

// Creates `path` with `episodes` expert demonstrations of `env` unless it
// already exists. Generation is seeded by `seed`.
void EnsureDemoFile(const std::string& env, const std::string& path,
                    int episodes, std::uint64_t seed);

}  // namespace drlr::harness

#endif  // DRLR_HARNESS_RUNNER_H_

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

#ifndef DRLR_HARNESS_SUMMARY_H_
#define DRLR_HARNESS_SUMMARY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "drlr/harness/runner.h"

namespace drlr::harness {

// Column label of a run: the algorithm, suffixed with the demo corruption
// when there is one, e.g. "td3bc[half_random]".
std::string RunLabel(const RunSummary& s);

struct SummaryCell {
  std::string env;
  std::string label;
  int n = 0;
  double mean_return = 0.0;
  // Sample standard deviation over seeds; 0 for a single run.
  double std_return = 0.0;
  double mean_success = 0.0;
};

// Mean over the seeds that logged an evaluation at `step`.
struct CurvePoint {
  std::string env;
  std::string label;
  std::int64_t step = 0;
  int n = 0;
  double mean_return = 0.0;
  double mean_success = 0.0;
};

struct SummaryTable {
  std::vector<SummaryCell> cells;  // sorted by env, then label
  std::vector<CurvePoint> curves;  // sorted by env, label, step
  // Missing or unreadable run directories.
  std::vector<std::string> errors;
};

// Each path is a run directory (contains summary.txt) or a directory whose
// immediate subdirectories are runs.
SummaryTable Summarize(const std::vector<std::string>& dirs);
SummaryTable SummarizeRuns(const std::vector<RunSummary>& runs);

std::string FormatTable(const SummaryTable& table);
std::string TableCsv(const SummaryTable& table);
std::string CurvesCsv(const SummaryTable& table);

}  // namespace drlr::harness

#endif  // DRLR_HARNESS_SUMMARY_H_

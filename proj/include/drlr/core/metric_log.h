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

#ifndef DRLR_CORE_METRIC_LOG_H_
#define DRLR_CORE_METRIC_LOG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace drlr::core {

// One line of the per-run metric CSV. Unset fields are written empty.
struct MetricRow {
  std::int64_t step = 0;
  std::string phase;
  std::optional<double> q_ref;
  std::optional<double> q_rl;
  std::optional<std::string> chosen;
  std::optional<double> critic_loss;
  std::optional<double> actor_loss;
  std::optional<double> alpha;
  std::optional<double> bc_diag_loss;
  std::optional<double> episode_return;
  std::optional<double> success;
};

inline constexpr char kMetricHeader[] =
    "step,phase,q_ref,q_rl,chosen,critic_loss,actor_loss,alpha,bc_diag_loss,"
    "episode_return,success";

std::string FormatMetricRow(const MetricRow& row);
void WriteMetricCsv(const std::string& path, const std::vector<MetricRow>& rows);
// Parses a file written by WriteMetricCsv.
std::vector<MetricRow> ReadMetricCsv(const std::string& path);

}  // namespace drlr::core

#endif  // DRLR_CORE_METRIC_LOG_H_

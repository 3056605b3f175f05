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

#include "drlr/core/metric_log.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace drlr::core {
namespace {

void AppendNumber(const std::optional<double>& v, std::string* out) {
  out->push_back(',');
  if (!v) return;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", *v);
  out->append(buf);
}

std::optional<double> ParseOptional(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) {
    throw std::runtime_error("metric csv: bad number '" + s + "'");
  }
  return v;
}

}  // namespace

std::string FormatMetricRow(const MetricRow& row) {
  std::string out = std::to_string(row.step);
  out += ',';
  out += row.phase;
  AppendNumber(row.q_ref, &out);
  AppendNumber(row.q_rl, &out);
  out += ',';
  if (row.chosen) out += *row.chosen;
  AppendNumber(row.critic_loss, &out);
  AppendNumber(row.actor_loss, &out);
  AppendNumber(row.alpha, &out);
  AppendNumber(row.bc_diag_loss, &out);
  AppendNumber(row.episode_return, &out);
  AppendNumber(row.success, &out);
  return out;
}

void WriteMetricCsv(const std::string& path,
                    const std::vector<MetricRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << kMetricHeader << '\n';
  for (const MetricRow& r : rows) out << FormatMetricRow(r) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<MetricRow> ReadMetricCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != kMetricHeader) {
    throw std::runtime_error("metric csv: bad header in " + path);
  }
  std::vector<MetricRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 11) {
      throw std::runtime_error("metric csv: line " + std::to_string(line_no) +
                               " has " + std::to_string(f.size()) + " fields");
    }
    MetricRow r;
    r.step = std::stoll(f[0]);
    r.phase = f[1];
    r.q_ref = ParseOptional(f[2]);
    r.q_rl = ParseOptional(f[3]);
    if (!f[4].empty()) r.chosen = f[4];
    r.critic_loss = ParseOptional(f[5]);
    r.actor_loss = ParseOptional(f[6]);
    r.alpha = ParseOptional(f[7]);
    r.bc_diag_loss = ParseOptional(f[8]);
    r.episode_return = ParseOptional(f[9]);
    r.success = ParseOptional(f[10]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace drlr::core

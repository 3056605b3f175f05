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

#include "drlr/harness/summary.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <tuple>

#include "drlr/core/metric_log.h"

namespace drlr::harness {
namespace {

namespace fs = std::filesystem;

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string Fixed(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

double Mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / v.size();
}

double SampleStd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = Mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / (v.size() - 1));
}

}  // namespace

std::string RunLabel(const RunSummary& s) {
  if (s.demo_corruption.empty() || s.demo_corruption == "none") return s.algo;
  return s.algo + "[" + s.demo_corruption + "]";
}

SummaryTable SummarizeRuns(const std::vector<RunSummary>& runs) {
  SummaryTable table;
  using Key = std::pair<std::string, std::string>;
  std::map<Key, std::vector<const RunSummary*>> groups;
  for (const RunSummary& r : runs) groups[{r.env, RunLabel(r)}].push_back(&r);

  std::map<std::tuple<std::string, std::string, std::int64_t>,
           std::pair<std::vector<double>, std::vector<double>>>
      curves;
  for (const auto& [key, members] : groups) {
    std::vector<double> returns;
    std::vector<double> success;
    for (const RunSummary* r : members) {
      returns.push_back(r->final_mean_return);
      success.push_back(r->success_rate);
      if (r->run_dir.empty()) continue;
      const fs::path metrics = fs::path(r->run_dir) / r->metrics_file;
      if (!fs::exists(metrics)) continue;
      try {
        for (const core::MetricRow& row :
             core::ReadMetricCsv(metrics.string())) {
          if (row.phase != "eval" || !row.episode_return) continue;
          auto& c = curves[{key.first, key.second, row.step}];
          c.first.push_back(*row.episode_return);
          c.second.push_back(row.success.value_or(0.0));
        }
      } catch (const std::exception& e) {
        table.errors.push_back(r->run_dir + ": " + e.what());
      }
    }
    table.cells.push_back({key.first, key.second,
                           static_cast<int>(members.size()), Mean(returns),
                           SampleStd(returns), Mean(success)});
  }
  for (const auto& [key, values] : curves) {
    table.curves.push_back({std::get<0>(key), std::get<1>(key),
                            std::get<2>(key),
                            static_cast<int>(values.first.size()),
                            Mean(values.first), Mean(values.second)});
  }
  return table;
}

SummaryTable Summarize(const std::vector<std::string>& dirs) {
  std::vector<RunSummary> runs;
  std::vector<std::string> errors;
  auto load = [&](const fs::path& dir) {
    try {
      runs.push_back(ReadSummary((dir / "summary.txt").string()));
    } catch (const std::exception& e) {
      errors.push_back(dir.string() + ": " + e.what());
    }
  };
  for (const std::string& d : dirs) {
    const fs::path dir(d);
    if (!fs::is_directory(dir)) {
      errors.push_back(d + ": not a directory");
      continue;
    }
    if (fs::exists(dir / "summary.txt")) {
      load(dir);
      continue;
    }
    std::vector<fs::path> children;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_directory()) children.push_back(entry.path());
    }
    std::sort(children.begin(), children.end());
    std::size_t found = 0;
    for (const fs::path& child : children) {
      if (fs::exists(child / "summary.txt")) {
        load(child);
        ++found;
      } else if (fs::exists(child / "config.txt")) {
        errors.push_back(child.string() + ": incomplete run (no summary.txt)");
      }
    }
    if (found == 0) errors.push_back(d + ": no runs found");
  }
  SummaryTable table = SummarizeRuns(runs);
  errors.insert(errors.end(), table.errors.begin(), table.errors.end());
  table.errors = std::move(errors);
  return table;
}

std::string FormatTable(const SummaryTable& table) {
  std::set<std::string> labels;
  std::set<std::string> envs;
  for (const SummaryCell& c : table.cells) {
    labels.insert(c.label);
    envs.insert(c.env);
  }
  std::vector<std::string> header = {"env"};
  header.insert(header.end(), labels.begin(), labels.end());
  std::vector<std::vector<std::string>> rows = {header};
  for (const std::string& env : envs) {
    std::vector<std::string> row = {env};
    for (const std::string& label : labels) {
      std::string cell = "-";
      for (const SummaryCell& c : table.cells) {
        if (c.env == env && c.label == label) {
          cell = Fixed(c.mean_return) + " +- " + Fixed(c.std_return) + " (n=" +
                 std::to_string(c.n) + ")";
        }
      }
      row.push_back(cell);
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      width[i] = std::max(width[i], row[i].size());
    }
  }
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += row[i];
      if (i + 1 < row.size()) out += std::string(width[i] - row[i].size() + 2, ' ');
    }
    out += '\n';
  }
  for (const std::string& e : table.errors) out += "error: " + e + '\n';
  return out;
}

std::string TableCsv(const SummaryTable& table) {
  std::string out = "env,label,n,mean_return,std_return,mean_success\n";
  for (const SummaryCell& c : table.cells) {
    out += c.env + ',' + c.label + ',' + std::to_string(c.n) + ',' +
           Num(c.mean_return) + ',' + Num(c.std_return) + ',' +
           Num(c.mean_success) + '\n';
  }
  return out;
}

std::string CurvesCsv(const SummaryTable& table) {
  std::string out = "env,label,step,n,mean_return,mean_success\n";
  for (const CurvePoint& p : table.curves) {
    out += p.env + ',' + p.label + ',' + std::to_string(p.step) + ',' +
           std::to_string(p.n) + ',' + Num(p.mean_return) + ',' +
           Num(p.mean_success) + '\n';
  }
  return out;
}

}  // namespace drlr::harness

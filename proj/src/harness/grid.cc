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

#include "drlr/harness/grid.h"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace drlr::harness {
namespace {

using core::Algo;

std::string SparseByDefault(const std::string& env) {
  return env.find(':') == std::string::npos ? env + ":sparse" : env;
}

RunConfig Base(const std::string& env, Algo algo, std::uint64_t seed,
               const GridOptions& options) {
  RunConfig cfg = DefaultRunConfig(env, algo);
  cfg.train.seed = seed;
  cfg.demo_file = options.demo_file;
  if (core::IsOffline(algo)) {
    cfg.train.total_steps = options.offline_steps;
  } else if (options.total_steps) {
    cfg.train.total_steps = *options.total_steps;
  }
  cfg.train.eval_every =
      std::max<std::int64_t>(1, cfg.train.total_steps / options.evals_per_run);
  return cfg;
}

}  // namespace

std::vector<std::string> PresetNames() { return {"expB", "expC", "expD"}; }

std::vector<RunConfig> Grid(const std::string& preset,
                            const GridOptions& options) {
  const std::string env = SparseByDefault(options.env);
  std::vector<Algo> algos;
  std::vector<std::string> corruptions = {"none"};
  if (preset == "expB") {
    if (env.find(":dense") != std::string::npos) {
      throw std::invalid_argument("expB runs on sparse environments only");
    }
    algos = {Algo::kIbrlTd3, Algo::kDrlrTd3};
  } else if (preset == "expC") {
    algos = {Algo::kIbrlTd3, Algo::kDrlrTd3, Algo::kIbrlSac, Algo::kDrlrSac};
  } else if (preset == "expD") {
    algos = {Algo::kBc, Algo::kTd3Bc};
    corruptions = {"none", "half_random", "noisy:0.3"};
  } else {
    std::string names;
    for (const std::string& p : PresetNames()) {
      names += names.empty() ? p : ", " + p;
    }
    throw std::invalid_argument("unknown preset '" + preset +
                                "' (presets: " + names + ")");
  }
  std::vector<RunConfig> out;
  for (Algo algo : algos) {
    for (const std::string& corruption : corruptions) {
      for (std::uint64_t seed : options.seeds) {
        RunConfig cfg = Base(env, algo, seed, options);
        cfg.demo_corruption = corruption;
        out.push_back(std::move(cfg));
      }
    }
  }
  return out;
}

std::string RunName(const RunConfig& cfg) {
  std::string env = cfg.env;
  std::replace(env.begin(), env.end(), ':', '-');
  std::string corruption = cfg.demo_corruption;
  std::replace(corruption.begin(), corruption.end(), ':', '-');
  std::string name = env + "_" + AlgoName(cfg.train.algo);
  if (corruption != "none") name += "_" + corruption;
  return name + "_s" + std::to_string(cfg.train.seed);
}

std::vector<RunSummary> RunGrid(const std::vector<RunConfig>& configs,
                                const std::string& out_root, int workers,
                                std::vector<std::string>* errors) {
  std::vector<std::optional<RunSummary>> results(configs.size());
  std::vector<std::string> failures(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      const std::string dir =
          (std::filesystem::path(out_root) / RunName(configs[i])).string();
      try {
        results[i] = Run(configs[i], dir);
      } catch (const std::exception& e) {
        failures[i] = RunName(configs[i]) + ": " + e.what();
      }
    }
  };
  const int n = std::max(1, std::min<int>(workers, configs.size()));
  std::vector<std::thread> threads;
  for (int t = 1; t < n; ++t) threads.emplace_back(worker);
  worker();
  for (std::thread& t : threads) t.join();

  std::vector<RunSummary> out;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (results[i]) out.push_back(*results[i]);
    if (!failures[i].empty() && errors != nullptr) {
      errors->push_back(failures[i]);
    }
  }
  return out;
}

}  // namespace drlr::harness

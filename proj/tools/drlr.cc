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

// Command-line entry point: run, grid, demos, summarize.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "drlr/envs/registry.h"
#include "drlr/harness/grid.h"
#include "drlr/harness/run_config.h"
#include "drlr/harness/runner.h"
#include "drlr/harness/summary.h"

namespace {

namespace fs = std::filesystem;
using namespace drlr;
using namespace drlr::harness;

void PrintSummary(const RunSummary& s) {
  std::printf("%s %s seed=%llu return=%.4f +- %.4f success=%.3f steps=%lld "
              "wall=%.1fs%s%s\n",
              s.env.c_str(), RunLabel(s).c_str(),
              static_cast<unsigned long long>(s.seed), s.final_mean_return,
              s.final_std_return, s.success_rate,
              static_cast<long long>(s.steps_done), s.wall_clock_s,
              s.failure ? " FAILED: " : "",
              s.failure ? s.failure->c_str() : "");
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Demonstration-guided reinforcement learning runs"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Train one configuration");
  std::string config_path;
  std::int64_t seed = -1;
  std::string run_out;
  run->add_option("--config", config_path, "key=value config file")
      ->required();
  run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--out", run_out, "Run directory");

  auto* grid = app.add_subcommand("grid", "Run an experiment preset");
  std::string preset;
  std::string grid_env;
  std::string grid_out;
  int workers = 1;
  std::vector<std::uint64_t> seeds = {10, 11, 12};
  std::int64_t steps = -1;
  std::string grid_demo;
  int demo_episodes = 30;
  grid->add_option("--preset", preset, "expB, expC or expD")->required();
  grid->add_option("--env", grid_env, "Environment name")->required();
  grid->add_option("--out", grid_out, "Output root");
  grid->add_option("--workers", workers, "Parallel runs")
      ->check(CLI::PositiveNumber);
  grid->add_option("--seeds", seeds, "Seeds")->delimiter(',');
  grid->add_option("--steps", steps, "Online step budget override");
  grid->add_option("--demo", grid_demo, "Demo file (generated when omitted)");
  grid->add_option("--demo-episodes", demo_episodes,
                   "Expert episodes when generating demos");

  auto* demos = app.add_subcommand("demos", "Record scripted-expert demos");
  std::string demo_env;
  int episodes = 30;
  double noise = 0.0;
  std::string demo_out;
  std::uint64_t demo_seed = 2026;
  demos->add_option("--env", demo_env, "Environment name")->required();
  demos->add_option("--episodes", episodes, "Episodes")->required();
  demos->add_option("--noise", noise, "Gaussian action noise std");
  demos->add_option("--out", demo_out, "Output file")->required();
  demos->add_option("--seed", demo_seed, "Generation seed");

  auto* summarize = app.add_subcommand("summarize", "Tabulate finished runs");
  std::vector<std::string> dirs;
  std::string csv_path;
  std::string curves_path;
  summarize->add_option("dirs", dirs, "Run or grid directories")->required();
  summarize->add_option("--csv", csv_path, "Write the table as CSV");
  summarize->add_option("--curves", curves_path,
                        "Write seed-averaged evaluation curves as CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      RunConfig cfg = LoadRunConfig(config_path);
      if (seed >= 0) cfg.train.seed = static_cast<std::uint64_t>(seed);
      if (run_out.empty()) {
        run_out = (fs::path(DefaultOutRoot()) / RunName(cfg)).string();
      }
      RunSummary s = Run(cfg, run_out);
      PrintSummary(s);
      return s.failure ? 1 : 0;
    }
    if (*grid) {
      if (grid_out.empty()) grid_out = DefaultOutRoot();
      GridOptions options;
      options.env = grid_env;
      options.seeds = seeds;
      if (steps >= 0) options.total_steps = steps;
      std::vector<RunConfig> configs = Grid(preset, options);
      if (grid_demo.empty()) {
        std::string name = configs.front().env;
        std::replace(name.begin(), name.end(), ':', '-');
        grid_demo = (fs::path(grid_out) / "demos" / (name + ".txt")).string();
        EnsureDemoFile(configs.front().env, grid_demo, demo_episodes, 2026);
      }
      for (RunConfig& c : configs) c.demo_file = grid_demo;
      std::vector<std::string> errors;
      std::vector<RunSummary> results =
          RunGrid(configs, grid_out, workers, &errors);
      for (const RunSummary& s : results) PrintSummary(s);
      SummaryTable table = SummarizeRuns(results);
      std::printf("\n%s", FormatTable(table).c_str());
      WriteText((fs::path(grid_out) / "summary.csv").string(),
                TableCsv(table));
      WriteText((fs::path(grid_out) / "curves.csv").string(),
                CurvesCsv(table));
      for (const std::string& e : errors) {
        std::fprintf(stderr, "error: %s\n", e.c_str());
      }
      return errors.empty() ? 0 : 1;
    }
    if (*demos) {
      auto env = envs::MakeEnv(demo_env);
      Rng rng(DeriveSeed(demo_seed, "demos"));
      DemoBuffer demo = envs::GenerateDemos(
          *env, envs::ScriptedExpert(demo_env), episodes, noise, rng);
      SaveDemos(demo, demo_out);
      std::printf("wrote %zu transitions in %zu episodes to %s\n", demo.size(),
                  demo.num_episodes(), demo_out.c_str());
      return 0;
    }
    if (*summarize) {
      SummaryTable table = Summarize(dirs);
      std::printf("%s", FormatTable(table).c_str());
      if (!csv_path.empty()) WriteText(csv_path, TableCsv(table));
      if (!curves_path.empty()) WriteText(curves_path, CurvesCsv(table));
      return table.cells.empty() ? 1 : 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

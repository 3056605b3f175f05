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

#include "drlr/harness/runner.h"

#include <openssl/sha.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "drlr/core/metric_log.h"
#include "drlr/core/trainer.h"
#include "drlr/envs/registry.h"

#ifndef DRLR_CODE_VERSION
#define DRLR_CODE_VERSION "unversioned"
#endif

namespace drlr::harness {
namespace {

namespace fs = std::filesystem;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

bool SameOutcome(const RunSummary& a, const RunSummary& b) {
  return a.env == b.env && a.algo == b.algo &&
         a.demo_corruption == b.demo_corruption && a.seed == b.seed &&
         a.final_mean_return == b.final_mean_return &&
         a.final_std_return == b.final_std_return &&
         a.success_rate == b.success_rate && a.steps_done == b.steps_done &&
         a.metrics_file == b.metrics_file && a.failure == b.failure;
}

std::string DefaultOutRoot() {
  const char* env = std::getenv("DRLR_OUT");
  return env != nullptr && *env != '\0' ? env : "runs";
}

std::string GitBlobHash(const std::string& bytes) {
  const std::string blob =
      "blob " + std::to_string(bytes.size()) + std::string(1, '\0') + bytes;
  unsigned char digest[SHA_DIGEST_LENGTH];
  SHA1(reinterpret_cast<const unsigned char*>(blob.data()), blob.size(),
       digest);
  char hex[2 * SHA_DIGEST_LENGTH + 1];
  for (int i = 0; i < SHA_DIGEST_LENGTH; ++i) {
    std::snprintf(hex + 2 * i, 3, "%02x", digest[i]);
  }
  return hex;
}

std::string CodeVersion() { return DRLR_CODE_VERSION; }

DemoBuffer PrepareDemos(const RunConfig& cfg) {
  DemoBuffer demo = LoadDemos(cfg.demo_file);
  const CorruptionSpec spec = ParseCorruption(cfg.demo_corruption);
  if (!spec.enabled) return demo;
  auto env = envs::MakeEnv(cfg.env);
  Rng rng(DeriveSeed(cfg.train.seed, "corrupt"));
  RandomRolloutFn random = [&env](Rng& r) {
    return envs::RandomRollout(*env, r);
  };
  return CorruptDemos(demo, spec.mode, spec.level, rng, random);
}

RunSummary Run(const RunConfig& cfg, const std::string& run_dir) {
  Validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  fs::create_directories(run_dir);
  const fs::path dir(run_dir);

  auto env = envs::MakeEnv(cfg.env);
  std::optional<DemoBuffer> demo;
  std::string demo_hash = "none";
  if (core::UsesDemos(cfg.train.algo)) {
    demo_hash = GitBlobHash(ReadFile(cfg.demo_file));
    demo = PrepareDemos(cfg);
  }

  WriteFile((dir / "config.txt").string(), FormatRunConfig(cfg));
  {
    std::ostringstream meta;
    meta << "seed=" << cfg.train.seed << '\n'
         << "demo_file=" << cfg.demo_file << '\n'
         << "demo_hash=" << demo_hash << '\n'
         << "prefill_replay_with_demos="
         << (cfg.train.prefill_replay ? "true" : "false") << '\n'
         << "code_version=" << CodeVersion() << '\n';
    WriteFile((dir / "metadata.txt").string(), meta.str());
  }

  core::TrainedRun run =
      core::Train(*env, demo ? &*demo : nullptr, cfg.train);
  core::WriteMetricCsv((dir / "metrics.csv").string(), run.log);
  core::SaveAgent((dir / "checkpoint_initial.bin").string(), run.initial,
                  cfg.train);
  core::SaveAgent((dir / "checkpoint_final.bin").string(), run.agent,
                  cfg.train);

  RunSummary s;
  s.run_dir = run_dir;
  s.env = cfg.env;
  s.algo = AlgoName(cfg.train.algo);
  s.demo_corruption = cfg.demo_corruption;
  s.seed = cfg.train.seed;
  s.final_mean_return = run.final_eval.mean_return;
  s.final_std_return = run.final_eval.std_return;
  s.success_rate = run.final_eval.success_rate;
  s.steps_done = run.steps_done;
  s.failure = run.failure;
  s.wall_clock_s = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  WriteSummary((dir / "summary.txt").string(), s);
  return s;
}

void WriteSummary(const std::string& path, const RunSummary& s) {
  std::ostringstream out;
  out << "env=" << s.env << '\n'
      << "algo=" << s.algo << '\n'
      << "demo_corruption=" << s.demo_corruption << '\n'
      << "seed=" << s.seed << '\n'
      << "final_mean_return=" << Num(s.final_mean_return) << '\n'
      << "final_std_return=" << Num(s.final_std_return) << '\n'
      << "success_rate=" << Num(s.success_rate) << '\n'
      << "steps_done=" << s.steps_done << '\n'
      << "metrics_file=" << s.metrics_file << '\n'
      << "wall_clock_s=" << Num(s.wall_clock_s) << '\n'
      << "failure=" << s.failure.value_or("") << '\n';
  WriteFile(path, out.str());
}

RunSummary ReadSummary(const std::string& path) {
  std::istringstream in(ReadFile(path));
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path + ": malformed line '" + line + "'");
    }
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto get = [&](const char* key) {
    auto it = kv.find(key);
    if (it == kv.end()) {
      throw std::runtime_error(path + ": missing " + std::string(key));
    }
    return it->second;
  };
  RunSummary s;
  try {
    s.run_dir = fs::path(path).parent_path().string();
    s.env = get("env");
    s.algo = get("algo");
    s.demo_corruption = get("demo_corruption");
    s.seed = std::stoull(get("seed"));
    s.final_mean_return = std::stod(get("final_mean_return"));
    s.final_std_return = std::stod(get("final_std_return"));
    s.success_rate = std::stod(get("success_rate"));
    s.steps_done = std::stoll(get("steps_done"));
    s.metrics_file = get("metrics_file");
    s.wall_clock_s = std::stod(get("wall_clock_s"));
  } catch (const std::logic_error& e) {
    throw std::runtime_error(path + ": bad value (" + e.what() + ")");
  }
  const std::string failure = get("failure");
  if (!failure.empty()) s.failure = failure;
  return s;
}

void EnsureDemoFile(const std::string& env, const std::string& path,
                    int episodes, std::uint64_t seed) {
  if (fs::exists(path)) return;
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  auto e = envs::MakeEnv(env);
  Rng rng(DeriveSeed(seed, "demos"));
  DemoBuffer demo = envs::GenerateDemos(*e, envs::ScriptedExpert(env),
                                        episodes, 0.0, rng);
  SaveDemos(demo, path);
}

}  // namespace drlr::harness

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

#include "drlr/harness/run_config.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "drlr/envs/registry.h"

namespace drlr::harness {
namespace {

using core::TrainConfig;

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::invalid_argument FieldError(const std::string& field,
                                 const std::string& what) {
  return std::invalid_argument("config field '" + field + "': " + what);
}

double ParseDouble(const std::string& field, const std::string& v) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size()) {
    throw FieldError(field, "expected a number, got '" + v + "'");
  }
  return out;
}

long long ParseInt(const std::string& field, const std::string& v) {
  std::size_t pos = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size()) {
    throw FieldError(field, "expected an integer, got '" + v + "'");
  }
  return out;
}

bool ParseBool(const std::string& field, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw FieldError(field, "expected true or false, got '" + v + "'");
}

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string FormatBool(bool v) { return v ? "true" : "false"; }

const char* SelectorModeName(core::SelectorMode m) {
  switch (m) {
    case core::SelectorMode::kIbrlHard:
      return "ibrl_hard";
    case core::SelectorMode::kIbrlSoft:
      return "ibrl_soft";
    case core::SelectorMode::kDrlr:
      return "drlr";
  }
  return "drlr";
}

core::SelectorMode DefaultSelectorMode(core::Algo algo) {
  return core::IsIbrl(algo) ? core::SelectorMode::kIbrlHard
                            : core::SelectorMode::kDrlr;
}

struct Field {
  const char* name;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(const std::string&, RunConfig*)> set;
};

#define DRLR_INT_FIELD(key, member)                                       \
  Field {                                                                 \
    key, [](const RunConfig& c) { return std::to_string(c.member); },    \
        [](const std::string& v, RunConfig* c) {                          \
          c->member = static_cast<decltype(c->member)>(ParseInt(key, v)); \
        }                                                                 \
  }
#define DRLR_DOUBLE_FIELD(key, member)                                 \
  Field {                                                              \
    key, [](const RunConfig& c) { return FormatDouble(c.member); },   \
        [](const std::string& v, RunConfig* c) {                       \
          c->member = ParseDouble(key, v);                             \
        }                                                              \
  }
#define DRLR_BOOL_FIELD(key, member)                                 \
  Field {                                                            \
    key, [](const RunConfig& c) { return FormatBool(c.member); },   \
        [](const std::string& v, RunConfig* c) {                     \
          c->member = ParseBool(key, v);                             \
        }                                                            \
  }

const std::vector<Field>& Fields() {
  static const std::vector<Field> fields = {
      {"env", [](const RunConfig& c) { return c.env; },
       [](const std::string& v, RunConfig* c) { c->env = v; }},
      {"algo",
       [](const RunConfig& c) { return std::string(AlgoName(c.train.algo)); },
       [](const std::string& v, RunConfig* c) {
         try {
           c->train.algo = core::ParseAlgo(v);
         } catch (const std::invalid_argument& e) {
           throw FieldError("algo", e.what());
         }
       }},
      {"seed", [](const RunConfig& c) { return std::to_string(c.train.seed); },
       [](const std::string& v, RunConfig* c) {
         const long long s = ParseInt("seed", v);
         if (s < 0) throw FieldError("seed", "must be >= 0");
         c->train.seed = static_cast<std::uint64_t>(s);
       }},
      DRLR_INT_FIELD("total_steps", train.total_steps),
      DRLR_INT_FIELD("batch_size", train.batch_size),
      DRLR_DOUBLE_FIELD("lr", train.lr),
      DRLR_DOUBLE_FIELD("gamma", train.gamma),
      DRLR_INT_FIELD("utd", train.utd),
      DRLR_DOUBLE_FIELD("tau", train.tau),
      DRLR_DOUBLE_FIELD("initial_alpha", train.initial_alpha),
      DRLR_BOOL_FIELD("learn_alpha", train.learn_alpha),
      {"target_entropy",
       [](const RunConfig& c) {
         return c.train.target_entropy ? FormatDouble(*c.train.target_entropy)
                                       : std::string("auto");
       },
       [](const std::string& v, RunConfig* c) {
         if (v == "auto") {
           c->train.target_entropy.reset();
         } else {
           c->train.target_entropy = ParseDouble("target_entropy", v);
         }
       }},
      {"selector_mode",
       [](const RunConfig& c) {
         return std::string(SelectorModeName(c.train.selector.mode));
       },
       [](const std::string& v, RunConfig* c) {
         if (v == "ibrl_hard") {
           c->train.selector.mode = core::SelectorMode::kIbrlHard;
         } else if (v == "ibrl_soft") {
           c->train.selector.mode = core::SelectorMode::kIbrlSoft;
         } else if (v == "drlr") {
           c->train.selector.mode = core::SelectorMode::kDrlr;
         } else if (v == "auto") {
           c->train.selector.mode = DefaultSelectorMode(c->train.algo);
         } else {
           throw FieldError("selector_mode",
                            "expected ibrl_hard, ibrl_soft, drlr or auto");
         }
       }},
      DRLR_DOUBLE_FIELD("softmax_temperature",
                        train.selector.softmax_temperature),
      DRLR_INT_FIELD("demo_eval_batch", train.selector.demo_eval_batch),
      {"q_reduce",
       [](const RunConfig& c) {
         return std::string(c.train.selector.q_reduce == agents::QReduce::kMin
                                ? "min"
                                : "mean");
       },
       [](const std::string& v, RunConfig* c) {
         if (v == "min") {
           c->train.selector.q_reduce = agents::QReduce::kMin;
         } else if (v == "mean") {
           c->train.selector.q_reduce = agents::QReduce::kMean;
         } else {
           throw FieldError("q_reduce", "expected min or mean");
         }
       }},
      DRLR_BOOL_FIELD("per_row", train.selector.per_row),
      DRLR_INT_FIELD("replay_capacity", train.replay_capacity),
      DRLR_BOOL_FIELD("prefill_replay_with_demos", train.prefill_replay),
      DRLR_DOUBLE_FIELD("demo_ratio", train.demo_ratio),
      {"demo_file", [](const RunConfig& c) { return c.demo_file; },
       [](const std::string& v, RunConfig* c) { c->demo_file = v; }},
      {"demo_corruption", [](const RunConfig& c) { return c.demo_corruption; },
       [](const std::string& v, RunConfig* c) {
         try {
           c->demo_corruption = FormatCorruption(ParseCorruption(v));
         } catch (const std::invalid_argument& e) {
           throw FieldError("demo_corruption", e.what());
         }
       }},
      {"ref_kind",
       [](const RunConfig& c) {
         return std::string(c.train.ref_kind == core::RefKind::kBc ? "bc"
                                                                   : "td3bc");
       },
       [](const std::string& v, RunConfig* c) {
         if (v == "bc") {
           c->train.ref_kind = core::RefKind::kBc;
         } else if (v == "td3bc") {
           c->train.ref_kind = core::RefKind::kTd3Bc;
         } else {
           throw FieldError("ref_kind", "expected bc or td3bc");
         }
       }},
      DRLR_INT_FIELD("ref_steps", train.ref_steps),
      DRLR_INT_FIELD("policy_delay", train.policy_delay),
      DRLR_DOUBLE_FIELD("exploration_std", train.exploration_std),
      DRLR_DOUBLE_FIELD("smooth_noise_std", train.smooth_noise_std),
      DRLR_DOUBLE_FIELD("smooth_noise_clip", train.smooth_noise_clip),
      DRLR_DOUBLE_FIELD("alpha_bc", train.alpha_bc),
      DRLR_INT_FIELD("random_steps", train.random_steps),
      DRLR_INT_FIELD("update_after", train.update_after),
      DRLR_INT_FIELD("eval_every", train.eval_every),
      DRLR_INT_FIELD("eval_episodes", train.eval_episodes),
      DRLR_INT_FIELD("hidden_width", train.network.hidden_width),
      DRLR_INT_FIELD("hidden_layers", train.network.hidden_layers),
  };
  return fields;
}

#undef DRLR_INT_FIELD
#undef DRLR_DOUBLE_FIELD
#undef DRLR_BOOL_FIELD

std::string BaseEnvName(const std::string& env) {
  return env.substr(0, env.find(':'));
}

}  // namespace

CorruptionSpec ParseCorruption(const std::string& text) {
  CorruptionSpec spec;
  if (text == "none" || text.empty()) return spec;
  if (text == "half_random") {
    spec.enabled = true;
    spec.mode = Corruption::kHalfRandom;
    spec.level = 0.5;
    return spec;
  }
  const std::string prefix = "noisy:";
  if (text.rfind(prefix, 0) == 0) {
    spec.enabled = true;
    spec.mode = Corruption::kNoisy;
    spec.level = ParseDouble("demo_corruption", text.substr(prefix.size()));
    if (spec.level < 0.0) {
      throw std::invalid_argument("noise level must be >= 0");
    }
    return spec;
  }
  throw std::invalid_argument("expected none, half_random or noisy:<std>, got '" +
                              text + "'");
}

std::string FormatCorruption(const CorruptionSpec& spec) {
  if (!spec.enabled) return "none";
  if (spec.mode == Corruption::kHalfRandom) return "half_random";
  std::ostringstream out;
  out << "noisy:" << spec.level;
  return out.str();
}

void ApplyEnvDefaults(const std::string& env, RunConfig* cfg) {
  const std::string base = BaseEnvName(env);
  if (base == "scoop_loader") {
    cfg->train.total_steps = 40000;
    cfg->train.initial_alpha = 0.01;
    cfg->train.learn_alpha = false;
    cfg->train.replay_capacity = 200000;
  } else if (base == "arm_drawer") {
    cfg->train.total_steps = 60000;
    cfg->train.initial_alpha = 0.1;
    cfg->train.learn_alpha = true;
    cfg->train.replay_capacity = 300000;
  } else {
    cfg->train.total_steps = 20000;
    cfg->train.initial_alpha = 0.1;
    cfg->train.learn_alpha = true;
    cfg->train.replay_capacity = 300000;
  }
}

RunConfig DefaultRunConfig(const std::string& env, core::Algo algo) {
  RunConfig cfg;
  cfg.env = env;
  cfg.train.algo = algo;
  cfg.train.selector.mode = DefaultSelectorMode(algo);
  cfg.train.prefill_replay = core::IsIbrl(algo);
  ApplyEnvDefaults(env, &cfg);
  return cfg;
}

std::vector<std::string> RunConfigKeys() {
  std::vector<std::string> keys;
  for (const Field& f : Fields()) keys.emplace_back(f.name);
  return keys;
}

RunConfig ParseRunConfig(const std::string& text) {
  std::map<std::string, std::string> values;
  std::set<std::string> known;
  for (const Field& f : Fields()) known.insert(f.name);
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key=value");
    }
    const std::string key = Trim(line.substr(0, eq));
    const std::string value = Trim(line.substr(eq + 1));
    if (known.count(key) == 0) {
      throw FieldError(key, "unknown key");
    }
    if (!values.emplace(key, value).second) {
      throw FieldError(key, "given twice");
    }
  }

  RunConfig cfg;
  if (auto it = values.find("env"); it != values.end()) cfg.env = it->second;
  ApplyEnvDefaults(cfg.env, &cfg);
  // algo first so that selector_mode=auto resolves against it.
  if (auto it = values.find("algo"); it != values.end()) {
    Fields()[1].set(it->second, &cfg);
  }
  cfg.train.selector.mode = DefaultSelectorMode(cfg.train.algo);
  cfg.train.prefill_replay = core::IsIbrl(cfg.train.algo);
  for (const Field& f : Fields()) {
    auto it = values.find(f.name);
    if (it != values.end()) f.set(it->second, &cfg);
  }
  return cfg;
}

RunConfig LoadRunConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseRunConfig(ss.str());
}

std::string FormatRunConfig(const RunConfig& cfg) {
  std::string out;
  for (const Field& f : Fields()) {
    out += f.name;
    out += '=';
    out += f.get(cfg);
    out += '\n';
  }
  return out;
}

void Validate(const RunConfig& cfg) {
  try {
    envs::MakeEnv(cfg.env);
  } catch (const std::exception& e) {
    throw FieldError("env", e.what());
  }
  core::Validate(cfg.train);
  const CorruptionSpec corruption = ParseCorruption(cfg.demo_corruption);
  if (core::UsesDemos(cfg.train.algo)) {
    if (cfg.demo_file.empty()) {
      throw FieldError("demo_file", std::string("required by algo ") +
                                        AlgoName(cfg.train.algo));
    }
    if (!std::filesystem::exists(cfg.demo_file)) {
      throw FieldError("demo_file", "no such file " + cfg.demo_file);
    }
  } else if (corruption.enabled) {
    throw FieldError("demo_corruption", "algo does not use demos");
  }
}

}  // namespace drlr::harness

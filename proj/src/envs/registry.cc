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

#include "drlr/envs/registry.h"

#include <algorithm>
#include <stdexcept>

#include "drlr/envs/arm_drawer.h"
#include "drlr/envs/point_reach.h"
#include "drlr/envs/scoop_loader.h"

namespace drlr::envs {
namespace {

void SplitName(const std::string& name, std::string* base, std::string* mode) {
  const auto colon = name.find(':');
  *base = name.substr(0, colon);
  *mode = colon == std::string::npos ? "" : name.substr(colon + 1);
}

Eigen::VectorXd Clip(Eigen::VectorXd a) { return a.cwiseMax(-1.0).cwiseMin(1.0); }

Eigen::VectorXd PointReachExpert(const Eigen::VectorXd& obs) {
  const Eigen::Vector2d p = obs.head<2>();
  const Eigen::Vector2d v = obs.tail<2>();
  return Clip(-3.0 * p - 2.5 * v);
}

Eigen::VectorXd ArmDrawerExpert(const Eigen::VectorXd& obs) {
  constexpr int n = ArmDrawer::kJoints;
  const Eigen::VectorXd q = obs.head(n);
  const Eigen::VectorXd qd = obs.segment(n, n);
  const double extension = obs(2 * n);
  const double distance = obs(2 * n + 1);
  const Eigen::Vector2d ee = ArmDrawer::EndEffector(q);
  const auto jac = ArmDrawer::Jacobian(q);
  const Eigen::Vector2d ee_vel = jac * qd;
  const bool pulling = extension > 1e-3 || distance < 0.06;
  const Eigen::Vector2d target =
      pulling ? Eigen::Vector2d(ArmDrawer::kHandleX - 0.45, ArmDrawer::kHandleY)
              : ArmDrawer::Handle(extension);
  const Eigen::Vector2d force = 4.0 * (target - ee) - 1.0 * ee_vel;
  return Clip(jac.transpose() * force);
}

Eigen::VectorXd ScoopLoaderExpert(const Eigen::VectorXd& obs) {
  Eigen::VectorXd a(3);
  const double advance = obs(2);
  if (advance < 0.9) {
    a << -0.857, 0.0, 0.0;  // bucket flat at floor level, penetrate
  } else {
    a << 1.0, -1.0, 0.0;  // curl and lift to the end pose
  }
  return a;
}

}  // namespace

std::vector<std::string> EnvNames() {
  return {"point_reach", "arm_drawer", "scoop_loader"};
}

std::unique_ptr<Env> MakeEnv(const std::string& name) {
  std::string base;
  std::string mode_text;
  SplitName(name, &base, &mode_text);
  if (mode_text != "" && mode_text != "dense" && mode_text != "sparse") {
    throw std::invalid_argument("unknown reward mode '" + mode_text + "'");
  }
  auto mode_or = [&](RewardMode fallback) {
    if (mode_text.empty()) return fallback;
    return mode_text == "dense" ? RewardMode::kDense : RewardMode::kSparse;
  };
  if (base == "point_reach") {
    return std::make_unique<PointReach>(mode_or(RewardMode::kDense));
  }
  if (base == "arm_drawer") {
    return std::make_unique<ArmDrawer>(mode_or(RewardMode::kDense));
  }
  if (base == "scoop_loader") {
    return std::make_unique<ScoopLoader>(mode_or(RewardMode::kSparse));
  }
  throw std::invalid_argument("unknown environment '" + name +
                              "' (known: point_reach, arm_drawer, scoop_loader)");
}

Policy ScriptedExpert(const std::string& env_name) {
  std::string base;
  std::string mode;
  SplitName(env_name, &base, &mode);
  if (base == "point_reach") return PointReachExpert;
  if (base == "arm_drawer") return ArmDrawerExpert;
  if (base == "scoop_loader") return ScoopLoaderExpert;
  throw std::invalid_argument("no scripted expert for '" + env_name + "'");
}

EpisodeStats Rollout(Env& env, const Policy& policy, double noise_std,
                     Rng& rng, std::vector<Transition>* out) {
  EpisodeStats stats;
  Eigen::VectorXd obs = env.Reset(rng);
  while (true) {
    Eigen::VectorXd action = policy(obs);
    if (noise_std > 0.0) {
      for (Eigen::Index i = 0; i < action.size(); ++i) {
        action(i) += noise_std * StandardNormal(rng);
      }
    }
    action = Clip(action);
    StepResult r = env.Step(action);
    stats.episode_return += r.reward;
    stats.success = stats.success || r.success;
    ++stats.length;
    if (out != nullptr) {
      out->push_back({obs, action, r.reward, r.observation, r.terminal});
    }
    obs = r.observation;
    if (r.done()) break;
  }
  return stats;
}

std::vector<Transition> RandomRollout(Env& env, Rng& rng) {
  const int adim = env.spec().action_dim;
  Policy random = [&rng, adim](const Eigen::VectorXd&) {
    Eigen::VectorXd a(adim);
    for (int i = 0; i < adim; ++i) a(i) = Uniform(rng, -1.0, 1.0);
    return a;
  };
  std::vector<Transition> episode;
  Rollout(env, random, 0.0, rng, &episode);
  return episode;
}

DemoBuffer GenerateDemos(Env& env, const Policy& expert, int n_episodes,
                         double noise_std, Rng& rng) {
  if (n_episodes < 1) {
    throw std::invalid_argument("GenerateDemos: n_episodes must be >= 1");
  }
  std::vector<std::vector<Transition>> episodes;
  for (int e = 0; e < n_episodes; ++e) {
    std::vector<Transition> ep;
    Rollout(env, expert, noise_std, rng, &ep);
    episodes.push_back(std::move(ep));
  }
  return DemoBuffer(env.spec().state_dim, env.spec().action_dim, episodes);
}

}  // namespace drlr::envs

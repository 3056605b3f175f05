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


// Acceptance checks. Each criterion prints one PASS/FAIL line with the
// measured quantities; the exit status is nonzero when any selected
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "drlr/admittance/controller.h"
#include "drlr/agents/losses.h"
#include "drlr/agents/networks.h"
#include "drlr/buffers/demo_buffer.h"
#include "drlr/core/metric_log.h"
#include "drlr/core/selector.h"
#include "drlr/core/trainer.h"
#include "drlr/envs/registry.h"
#include "drlr/envs/scoop_loader.h"
#include "drlr/harness/grid.h"
#include "drlr/harness/run_config.h"
#include "drlr/harness/runner.h"
#include "drlr/nn/mlp.h"
#include "drlr/rng.h"
#include "support/oracles.h"

namespace drlr::acceptance {
namespace {

namespace fs = std::filesystem;
using agents::TwinCritic;
using core::Algo;
using core::Branch;
using core::RefPolicy;
using core::SelectorConfig;
using core::SelectorMode;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string Fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

// ---- shared fixtures ---------------------------------------------------------

constexpr int kSdim = 2;
constexpr int kAdim = 1;

RefPolicy ConstantRef(double action) {
  RefPolicy r;
  r.policy.trunk.layer_sizes = {kSdim, kAdim};
  r.policy.trunk.activation = nn::Activation::kIdentity;
  r.policy.trunk.weights = {Eigen::MatrixXd::Zero(kAdim, kSdim)};
  r.policy.trunk.biases = {Eigen::VectorXd::Constant(kAdim, std::atanh(action))};
  return r;
}

// Q(s, a) = w * a + v * sum(s) + shift on both heads.
TwinCritic LinearCritic(double w, double v = 0.0, double shift = 0.0) {
  nn::MlpParams p;
  p.layer_sizes = {kSdim + kAdim, 1};
  p.activation = nn::Activation::kIdentity;
  p.weights = {Eigen::MatrixXd::Zero(1, kSdim + kAdim)};
  for (int i = 0; i < kSdim; ++i) p.weights[0](0, i) = v;
  p.weights[0](0, kSdim) = w;
  p.biases = {Eigen::VectorXd::Constant(1, shift)};
  return {p, p};
}

DemoBuffer ConstantDemo(double level) {
  std::vector<Transition> ep;
  for (int k = 0; k < 20; ++k) {
    Transition t;
    t.state = Eigen::VectorXd::Constant(kSdim, level);
    t.action = Eigen::VectorXd::Zero(kAdim);
    t.next_state = t.state;
    ep.push_back(t);
  }
  return DemoBuffer(kSdim, kAdim, {ep});
}

DemoBuffer RandomDemo(Rng& rng, int transitions) {
  std::vector<Transition> ep;
  for (int k = 0; k < transitions; ++k) {
    Transition t;
    t.state = testing::RandomMatrix(rng, kSdim, 1).col(0);
    t.action = testing::RandomMatrix(rng, kAdim, 1, 0.9).col(0);
    t.next_state = t.state;
    ep.push_back(t);
  }
  return DemoBuffer(kSdim, kAdim, {ep});
}

SelectorConfig Mode(SelectorMode mode, double temperature = 1.0) {
  SelectorConfig c;
  c.mode = mode;
  c.softmax_temperature = temperature;
  c.demo_eval_batch = 16;
  return c;
}

// Rewards (0, 1, -0.5, 2); the third transition is terminal.
Batch FourTransitions() {
  Batch b;
  b.states = Eigen::MatrixXd::Zero(kSdim, 4);
  b.actions = Eigen::MatrixXd::Zero(kAdim, 4);
  b.rewards = Eigen::Vector4d(0.0, 1.0, -0.5, 2.0);
  b.next_states = Eigen::MatrixXd::Zero(kSdim, 4);
  b.not_done = Eigen::Vector4d(1.0, 1.0, 0.0, 1.0);
  return b;
}

// ---- 1: gradient correctness ---------------------------------------------------

Outcome GradientCorrectness() {
  constexpr int kTrials = 20;
  constexpr double kTol = 1e-5;
  using testing::MaxFdRelErr;
  using testing::RandomMatrix;
  std::map<std::string, double> worst;
  auto note = [&](const char* name, double err) {
    worst[name] = std::max(worst[name], err);
  };
  Rng rng(1);
  for (int t = 0; t < kTrials; ++t) {
    const agents::DeterministicPolicy p =
        testing::SmallPolicy(3, 2, 8, 100 + t);
    const agents::GaussianPolicy g = testing::SmallGaussian(3, 2, 8, 200 + t);
    const TwinCritic c = testing::SmallCritic(3, 2, 8, 300 + t);
    const Eigen::MatrixXd s = RandomMatrix(rng, 3, 6);
    const Eigen::MatrixXd a = RandomMatrix(rng, 2, 6, 0.9);

    const agents::LossAndGrad bc = agents::BcLoss(p, s, a);
    note("bc", MaxFdRelErr(p.trunk, nn::Flatten(bc.grad),
                           [&](const nn::MlpParams& q) {
                             return testing::OracleBcLoss(q, s, a);
                           },
                           0, rng));

    const Batch b = testing::RandomBatch(rng, 3, 2, 6);
    const Eigen::VectorXd y = RandomMatrix(rng, 6, 1).col(0);
    const agents::CriticLoss cl = agents::CriticLossAndGrad(c, b, y);
    note("critic_mse",
         MaxFdRelErr(c.q1, nn::Flatten(cl.q1),
                     [&](const nn::MlpParams& q) {
                       return testing::OracleCriticLoss(q, c.q2, b, y);
                     },
                     0, rng));
    note("critic_mse",
         MaxFdRelErr(c.q2, nn::Flatten(cl.q2),
                     [&](const nn::MlpParams& q) {
                       return testing::OracleCriticLoss(c.q1, q, b, y);
                     },
                     0, rng));

    const Eigen::MatrixXd eps = RandomMatrix(rng, 2, 6, 1.5);
    const double alpha = 0.05 + 0.5 * t / kTrials;
    const agents::SacActorLoss sac =
        agents::SacActorLossAndGrad(g, c, s, eps, alpha);
    note("sac_actor",
         MaxFdRelErr(g.trunk, nn::Flatten(sac.grad),
                     [&](const nn::MlpParams& q) {
                       return testing::OracleSacActorLoss(q, 2, c, s, eps,
                                                          alpha);
                     },
                     0, rng));

    const agents::LossAndGrad td3 = agents::Td3ActorLoss(p, c, s);
    note("td3_actor",
         MaxFdRelErr(p.trunk, nn::Flatten(td3.grad),
                     [&](const nn::MlpParams& q) {
                       return testing::OracleTd3ActorLoss(q, c, s);
                     },
                     0, rng));

    const double lambda = Uniform(rng, 0.1, 3.0);
    const agents::LossAndGrad td3bc =
        agents::Td3BcActorLoss(p, c, s, a, lambda);
    note("td3bc_actor",
         MaxFdRelErr(p.trunk, nn::Flatten(td3bc.grad),
                     [&](const nn::MlpParams& q) {
                       return testing::OracleTd3BcLoss(q, c, s, a, lambda);
                     },
                     0, rng));

    const double la = Uniform(rng, -3.0, 1.0);
    const double mlp = Uniform(rng, -4.0, 4.0);
    const double target = Uniform(rng, -3.0, 0.0);
    const double h = 1e-6;
    const double fd = (testing::OracleAlphaLoss(la + h, mlp, target) -
                       testing::OracleAlphaLoss(la - h, mlp, target)) /
                      (2 * h);
    note("alpha_dual",
         testing::RelErr(agents::AlphaGrad(la, mlp, target), fd));
  }
  Outcome out{true, ""};
  for (const auto& [name, err] : worst) {
    out.pass = out.pass && err < kTol;
    out.detail += Fmt("%s %.1e ", name.c_str(), err);
  }
  out.detail += Fmt("(max rel err, tol %.0e, %d trials)", kTol, kTrials);
  return out;
}

// ---- 2: Bellman-operator oracles ---------------------------------------------

Outcome BellmanOracles() {
  constexpr double kTol = 1e-12;
  const Batch b = FourTransitions();
  const Eigen::Vector4d logp(-2.0, -1.0, 0.5, 0.0);
  // min(2, 3) = 2 bootstrapped, entropy-free and with alpha = 0.5.
  const Eigen::Vector4d plain(1.98, 2.98, -0.5, 3.98);
  const Eigen::Vector4d soft(2.97, 3.475, -0.5, 3.98);
  const TwinCritic c23 = testing::ConstantCritic(kSdim, kAdim, 2.0, 3.0);
  const agents::DeterministicPolicy pi = testing::SmallPolicy(kSdim, kAdim, 4, 1);
  const Eigen::MatrixXd zero_a = Eigen::MatrixXd::Zero(kAdim, 4);
  Rng rng(2);

  std::map<std::string, double> err;
  auto check = [&](const char* name, const Eigen::VectorXd& got,
                   const Eigen::Vector4d& want) {
    err[name] = std::max(err[name], (got - want).cwiseAbs().maxCoeff());
  };
  check("td3", agents::Td3Target(c23, pi, b, 0.99, zero_a), plain);
  check("sac", agents::SacTarget(c23, b, zero_a, logp, 0.99, 0.5), soft);
  check("sac_alpha0", agents::SacTarget(c23, b, zero_a, logp, 0.99, 0.0),
        plain);
  check("ibrl",
        core::IbrlBellmanTarget(b, ConstantRef(0.3), zero_a, logp, c23, 0.99,
                                0.5, Mode(SelectorMode::kIbrlHard), rng),
        soft);
  check("ibrl_alpha0",
        core::IbrlBellmanTarget(b, ConstantRef(0.3), zero_a, logp, c23, 0.99,
                                0.0, Mode(SelectorMode::kIbrlHard), rng),
        plain);
  const core::DrlrTarget rl_branch =
      core::DrlrBellmanTarget(b, ConstantDemo(1.0), ConstantRef(0.3), zero_a,
                              logp, c23, 0.99, 0.5, Mode(SelectorMode::kDrlr),
                              rng);
  check("drlr_rl", rl_branch.targets, soft);
  check("drlr_alpha0",
        core::DrlrBellmanTarget(b, ConstantDemo(1.0), ConstantRef(0.3), zero_a,
                                logp, c23, 0.99, 0.0,
                                Mode(SelectorMode::kDrlr), rng)
            .targets,
        plain);
  // Q1 = 2 + sum(s), Q2 = 10 + sum(s): demo states at 1 give q_ref = 4 > 2.
  TwinCritic ref_critic = LinearCritic(0.0, 1.0, 2.0);
  ref_critic.q2.biases[0](0) = 10.0;
  const core::DrlrTarget ref_branch = core::DrlrBellmanTarget(
      b, ConstantDemo(1.0), ConstantRef(0.3), zero_a, logp, ref_critic, 0.99,
      0.5, Mode(SelectorMode::kDrlr), rng);
  check("drlr_ref", ref_branch.targets, plain);

  Outcome out{true, ""};
  for (const auto& [name, e] : err) {
    out.pass = out.pass && e <= kTol;
    out.detail += Fmt("%s %.1e ", name.c_str(), e);
  }
  const bool branches = rl_branch.selection.decision.chosen == Branch::kRl &&
                        ref_branch.selection.decision.chosen == Branch::kRef;
  out.pass = out.pass && branches;
  out.detail += Fmt("(max abs err, tol %.0e; drlr branches %s)", kTol,
                    branches ? "rl/ref as constructed" : "WRONG");
  return out;
}

// ---- 3: selection rules --------------------------------------------------------

Outcome SelectionRules() {
  Rng rng(3);
  int wrong = 0;
  const Eigen::VectorXd s0 = Eigen::VectorXd::Zero(kSdim);
  auto ibrl = [&](double ref, double rl) {
    return core::IbrlPropose(s0, ConstantRef(ref),
                             Eigen::VectorXd::Constant(1, rl), LinearCritic(1.0),
                             Mode(SelectorMode::kIbrlHard), rng)
        .decision.chosen;
  };
  wrong += ibrl(0.4, 0.1) != Branch::kRef;
  wrong += ibrl(0.1, 0.4) != Branch::kRl;
  // Tie: the RL candidate is exactly the reference action.
  const double ref_action = ConstantRef(0.3).policy.Act(s0)(0);
  wrong += ibrl(0.3, ref_action) != Branch::kRl;

  // Q = sum(s): demo states at `level` against query states at 0.5.
  auto drlr = [&](double level, const TwinCritic& critic) {
    return core::DrlrSelect(Eigen::MatrixXd::Constant(kSdim, 5, 0.5),
                            ConstantRef(0.6),
                            Eigen::MatrixXd::Constant(kAdim, 5, -0.3), critic,
                            ConstantDemo(level), Mode(SelectorMode::kDrlr),
                            rng)
        .decision.chosen;
  };
  wrong += drlr(1.0, LinearCritic(0.0, 1.0)) != Branch::kRef;
  wrong += drlr(0.2, LinearCritic(0.0, 1.0)) != Branch::kRl;
  wrong += drlr(0.5, LinearCritic(0.0, 1.0)) != Branch::kRl;
  wrong += drlr(1.0, testing::ConstantCritic(kSdim, kAdim, 1.5, 4.0)) !=
           Branch::kRl;

  int shift_flips = 0;
  const DemoBuffer demo = RandomDemo(rng, 40);
  for (int t = 0; t < 200; ++t) {
    const TwinCritic c = testing::SmallCritic(kSdim, kAdim, 6, 400 + t);
    TwinCritic shifted = c;
    const double shift = Uniform(rng, -20.0, 20.0);
    shifted.q1.biases.back()(0) += shift;
    shifted.q2.biases.back()(0) += shift;
    const RefPolicy ref{core::RefKind::kBc,
                        testing::SmallPolicy(kSdim, kAdim, 6, t)};
    const Eigen::MatrixXd query = testing::RandomMatrix(rng, kSdim, 8);
    const Eigen::MatrixXd rl = testing::RandomMatrix(rng, kAdim, 8, 0.9);
    Rng r1(1000 + t);
    Rng r2(1000 + t);
    const Branch b1 = core::DrlrSelect(query, ref, rl, c, demo,
                                       Mode(SelectorMode::kDrlr), r1)
                          .decision.chosen;
    const Branch b2 = core::DrlrSelect(query, ref, rl, shifted, demo,
                                       Mode(SelectorMode::kDrlr), r2)
                          .decision.chosen;
    shift_flips += b1 != b2;
  }

  double worst_freq = 0.0;
  for (double temperature : {0.1, 1.0, 10.0}) {
    const SelectorConfig cfg = Mode(SelectorMode::kIbrlSoft, temperature);
    constexpr int kDraws = 10000;
    int refs = 0;
    for (int i = 0; i < kDraws; ++i) {
      refs += core::IbrlPropose(s0, ConstantRef(0.4),
                                Eigen::VectorXd::Constant(1, 0.1),
                                LinearCritic(1.0), cfg, rng)
                  .decision.chosen == Branch::kRef;
    }
    const double p = testing::BoltzmannRefProbability(0.4, 0.1, temperature);
    worst_freq =
        std::max(worst_freq, std::abs(refs / static_cast<double>(kDraws) - p));
  }
  Outcome out;
  out.pass = wrong == 0 && shift_flips == 0 && worst_freq <= 0.02;
  out.detail = Fmt(
      "wrong branch choices %d/7, shift-invariance flips %d/200, "
      "max soft-frequency deviation %.4f (tol 0.02, 10k draws, T in "
      "{0.1,1,10})",
      wrong, shift_flips, worst_freq);
  return out;
}

// ---- 4: tabular equivalence ------------------------------------------------------

Outcome TabularEquivalence() {
  const testing::ChainMdp mdp;
  const auto q = mdp.OptimalQ();
  const Batch b = mdp.AllTransitions();
  double worst[2] = {0.0, 0.0};
  for (int sac = 0; sac < 2; ++sac) {
    const TwinCritic c = testing::FitChainCritic(sac == 1, 0.0);
    for (int head = 0; head < 2; ++head) {
      const Eigen::VectorXd v = c.Q(head, b.states, b.actions);
      for (int j = 0; j < 4; ++j) {
        worst[sac] = std::max(worst[sac], std::abs(v(j) - q[j / 2][j % 2]));
      }
    }
  }
  Outcome out;
  out.pass = worst[0] <= 1e-3 && worst[1] <= 1e-3;
  out.detail = Fmt("max |Q - Q*|: td3 %.2e, sac(alpha=0) %.2e (tol 1e-3)",
                   worst[0], worst[1]);
  return out;
}

// ---- 5: admittance closed forms ------------------------------------------------

admittance::AdmittanceState RunTwoSided(const admittance::AdmittanceGains& g,
                                        const Eigen::Vector2d& tau_d,
                                        const Eigen::Vector2d& tau_e,
                                        double t, double dt) {
  admittance::AdmittanceState s;
  const int steps = static_cast<int>(std::lround(t / dt));
  for (int k = 0; k < steps; ++k) {
    s = admittance::AdmittanceTwoSided(s, g, tau_d, tau_e, dt).state;
  }
  return s;
}

Outcome AdmittanceClosedForms() {
  const admittance::AdmittanceGains g{1.0, 4.0, 2.5, 10.0};
  const Eigen::Vector2d tau_d(3.0, -1.0);
  const Eigen::Vector2d tau_e(0.5, 0.25);
  const admittance::AdmittanceState ss = RunTwoSided(g, tau_d, tau_e, 40.0, 1e-3);
  double steady = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double expected = (tau_d(i) - tau_e(i)) / g.stiffness;
    steady = std::max(steady, std::abs(ss.q_f(i) - expected) /
                                  std::abs(expected));
  }

  const admittance::AdmittanceGains crit{1.0, 2.0, 1.0, 100.0};
  double step = 0.0;
  for (double t : {1.0, 2.0, 5.0}) {
    const admittance::AdmittanceState s = RunTwoSided(
        crit, Eigen::Vector2d(1.0, 1.0), Eigen::Vector2d::Zero(), t, 1e-4);
    step = std::max(step, std::abs(s.q_f(0) - testing::CriticallyDampedStep(t)));
  }

  const admittance::AdmittanceGains one{1.0, 2.0, 1.0, 2.0};
  admittance::AdmittanceState s;
  double moved = 0.0;
  for (int k = 0; k < 5000; ++k) {
    const double tau = one.tau_sat * std::sin(0.01 * k);
    s = admittance::AdmittanceOneSided(s, one, Eigen::Vector2d(tau, one.tau_sat),
                                       1e-3)
            .state;
    moved = std::max(moved, s.q_f.cwiseAbs().maxCoeff() +
                                s.qd_f.cwiseAbs().maxCoeff());
  }
  Outcome out;
  out.pass = steady <= 0.01 && step <= 1e-3 && moved == 0.0;
  out.detail = Fmt(
      "steady-state rel err %.2e (tol 1%%), step response max err %.2e at "
      "t={1,2,5} (tol 1e-3), one-sided max |q_f|+|qd_f| while tau_e<=tau_sat "
      "%.1e (must be 0)",
      steady, step, moved);
  return out;
}

// ---- 9: ScoopLoader reward contract ------------------------------------------

Outcome ScoopLoaderContract() {
  std::vector<std::string> problems;
  envs::ScoopLoader env;
  Rng rng(9);
  env.Reset(rng);
  env.SetVolume(env.params().volume_max);
  const double full = env.FillReward();
  env.SetJoints(env.start_configuration());
  const double start = env.EndReward();
  if (full != 1.0) problems.push_back(Fmt("R_f(full)=%g", full));
  if (std::abs(start) > 1e-12) problems.push_back(Fmt("R_e(start)=%g", start));

  // A failed episode (commanding the start pose) and an expert episode.
  auto rollout = [&](const envs::Policy& policy, std::vector<double>* rewards) {
    envs::ScoopLoader e;
    Rng r(10);
    Eigen::VectorXd obs = e.Reset(r);
    envs::StepResult res;
    do {
      res = e.Step(policy(obs));
      obs = res.observation;
      rewards->push_back(res.reward);
    } while (!res.done());
    return e.reward_step();
  };
  std::vector<double> fail;
  const int reward_step = rollout(
      [](const Eigen::VectorXd&) { return Eigen::Vector3d(-6.0 / 7.0, 0, 0); },
      &fail);
  std::vector<double> expert;
  rollout(envs::ScriptedExpert("scoop_loader"), &expert);
  for (const auto* rewards : {&fail, &expert}) {
    for (std::size_t t = 0; t < rewards->size(); ++t) {
      if (static_cast<int>(t) + 1 != reward_step && (*rewards)[t] != 0.0) {
        problems.push_back(Fmt("reward %g at step %zu", (*rewards)[t], t + 1));
      }
    }
  }
  const double fail_reward = fail.at(reward_step - 1);
  const double expert_reward = expert.at(reward_step - 1);
  if (fail_reward != -10.0) problems.push_back(Fmt("fail reward %g", fail_reward));
  if (!(expert_reward > 1.0)) {
    problems.push_back(Fmt("expert reward %g", expert_reward));
  }

  const double at = -0.5;
  const double above = std::nextafter(-0.5, 0.0);
  const bool phase_ok = !envs::ScoopLoader::IsPenetrationPhase(at) &&
                        envs::ScoopLoader::IsPenetrationPhase(above);
  for (double qd2 : {at, above}) {
    envs::ScoopLoader e;
    Rng r(11);
    e.Reset(r);
    const envs::StepResult res = e.Step(Eigen::Vector3d(0.0, qd2, 0.0));
    if (res.info.at("phase") != (qd2 > -0.5 ? 1.0 : 2.0)) {
      problems.push_back(Fmt("phase at q_d2=%.17g", qd2));
    }
  }
  if (!phase_ok) problems.push_back("phase predicate");

  Outcome out;
  out.pass = problems.empty();
  out.detail = Fmt(
      "R_f(full)=%g R_e(start)=%.1e fail=%g expert=%.4f at step %d, "
      "phase(-0.5)=P2 phase(-0.5+ulp)=P1",
      full, start, fail_reward, expert_reward, reward_step);
  for (const std::string& p : problems) out.detail += "; " + p;
  return out;
}

// ---- experiment analogs -------------------------------------------------------

struct ExpContext {
  std::string out_root;
  std::vector<std::uint64_t> seeds = {10, 11, 12};
};

std::string DemoPath(const ExpContext& ctx, const std::string& env) {
  std::string name = env;
  std::replace(name.begin(), name.end(), ':', '-');
  const std::string path =
      (fs::path(ctx.out_root) / "demos" / (name + ".txt")).string();
  harness::EnsureDemoFile(env, path, 30, 2026);
  return path;
}

std::vector<harness::RunSummary> RunAll(
    const std::vector<harness::RunConfig>& configs, const fs::path& root,
    std::vector<std::string>* errors) {
  std::vector<harness::RunSummary> runs =
      harness::RunGrid(configs, root.string(), 1, errors);
  for (const harness::RunSummary& s : runs) {
    std::printf("  %s %s%s seed=%llu return=%.3f success=%.2f wall=%.0fs\n",
                s.env.c_str(), s.algo.c_str(),
                s.demo_corruption == "none"
                    ? ""
                    : ("[" + s.demo_corruption + "]").c_str(),
                static_cast<unsigned long long>(s.seed), s.final_mean_return,
                s.success_rate, s.wall_clock_s);
    if (s.failure) errors->push_back(s.run_dir + ": " + *s.failure);
  }
  std::fflush(stdout);
  return runs;
}

// Mean final return (or success) over runs matching the predicate.
double MeanOf(const std::vector<harness::RunSummary>& runs,
              const std::function<bool(const harness::RunSummary&)>& pick,
              bool success = false) {
  double sum = 0.0;
  int n = 0;
  for (const harness::RunSummary& s : runs) {
    if (!pick(s)) continue;
    sum += success ? s.success_rate : s.final_mean_return;
    ++n;
  }
  return n > 0 ? sum / n : std::nan("");
}

std::function<bool(const harness::RunSummary&)> AlgoIs(
    const std::string& algo, const std::string& corruption = "none") {
  return [=](const harness::RunSummary& s) {
    return s.algo == algo && s.demo_corruption == corruption;
  };
}

// Mean BC-diagnostic loss over the last quarter of the interaction steps.
double LateBcDiagnostic(const harness::RunSummary& s) {
  const std::vector<core::MetricRow> rows = core::ReadMetricCsv(
      (fs::path(s.run_dir) / s.metrics_file).string());
  const double start = 0.75 * static_cast<double>(s.steps_done);
  double sum = 0.0;
  int n = 0;
  for (const core::MetricRow& r : rows) {
    // Every interaction row carries the diagnostic; eval and bootstrap rows
    // do not.
    if (r.bc_diag_loss && r.step > start) {
      sum += *r.bc_diag_loss;
      ++n;
    }
  }
  return n > 0 ? sum / n : std::nan("");
}

Outcome WithErrors(Outcome out, const std::vector<std::string>& errors) {
  for (const std::string& e : errors) out.detail += "; error: " + e;
  out.pass = out.pass && errors.empty();
  return out;
}

Outcome ExperimentB(const ExpContext& ctx) {
  harness::GridOptions options;
  options.env = "arm_drawer:sparse";
  options.seeds = ctx.seeds;
  options.demo_file = DemoPath(ctx, options.env);
  std::vector<std::string> errors;
  const std::vector<harness::RunSummary> runs =
      RunAll(harness::Grid("expB", options), fs::path(ctx.out_root) / "expB",
             &errors);
  double bc[2] = {0.0, 0.0};
  int n[2] = {0, 0};
  for (const harness::RunSummary& s : runs) {
    const int k = s.algo == "drlr_td3" ? 0 : 1;
    bc[k] += LateBcDiagnostic(s);
    ++n[k];
  }
  const double bc_drlr = bc[0] / n[0];
  const double bc_ibrl = bc[1] / n[1];
  const double ret_drlr = MeanOf(runs, AlgoIs("drlr_td3"));
  const double ret_ibrl = MeanOf(runs, AlgoIs("ibrl_td3"));
  Outcome out;
  const bool a = bc_drlr <= 0.5 * bc_ibrl;
  const bool b = ret_drlr >= 1.5 * ret_ibrl;
  out.pass = a && b;
  out.detail = Fmt(
      "(a) late BC diagnostic drlr_td3 %.3f vs ibrl_td3 %.3f, ratio %.2f "
      "(need <= 0.5) %s; (b) final return drlr_td3 %.3f vs ibrl_td3 %.3f "
      "(need >= 1.5x) %s",
      bc_drlr, bc_ibrl, bc_drlr / bc_ibrl, a ? "ok" : "FAIL", ret_drlr,
      ret_ibrl, b ? "ok" : "FAIL");
  return WithErrors(out, errors);
}

Outcome ExperimentC(const ExpContext& ctx) {
  std::vector<std::string> errors;
  Outcome out{true, ""};
  for (const std::string env : {"point_reach:sparse", "arm_drawer:sparse"}) {
    harness::GridOptions options;
    options.env = env;
    options.seeds = ctx.seeds;
    options.demo_file = DemoPath(ctx, env);
    std::string name = env;
    std::replace(name.begin(), name.end(), ':', '-');
    const std::vector<harness::RunSummary> runs =
        RunAll(harness::Grid("expC", options),
               fs::path(ctx.out_root) / "expC" / name, &errors);
    std::map<std::string, double> mean;
    for (const char* algo : {"ibrl_td3", "drlr_td3", "ibrl_sac", "drlr_sac"}) {
      mean[algo] = MeanOf(runs, AlgoIs(algo));
    }
    double lo = mean["drlr_sac"];
    double hi = mean["drlr_sac"];
    double best_other = -INFINITY;
    for (const auto& [algo, m] : mean) {
      lo = std::min(lo, m);
      hi = std::max(hi, m);
      if (algo != "drlr_sac") best_other = std::max(best_other, m);
    }
    const double bar = best_other - 0.05 * (hi - lo);
    const bool ok = mean["drlr_sac"] >= bar;
    out.pass = out.pass && ok;
    out.detail += Fmt(
        "%s: drlr_sac %.3f, drlr_td3 %.3f, ibrl_sac %.3f, ibrl_td3 %.3f, "
        "need >= %.3f %s; ",
        env.c_str(), mean["drlr_sac"], mean["drlr_td3"], mean["ibrl_sac"],
        mean["ibrl_td3"], bar, ok ? "ok" : "FAIL");
  }
  return WithErrors(out, errors);
}

Outcome ExperimentD(const ExpContext& ctx) {
  const std::string env = "arm_drawer:sparse";
  const std::string demos = DemoPath(ctx, env);
  harness::GridOptions options;
  options.env = env;
  options.seeds = ctx.seeds;
  options.demo_file = demos;
  std::vector<harness::RunConfig> configs;
  for (harness::RunConfig cfg : harness::Grid("expD", options)) {
    if (cfg.demo_corruption != "half_random") continue;
    cfg.train.eval_episodes = 100;
    configs.push_back(cfg);
  }
  for (const char* corruption : {"none", "half_random"}) {
    for (std::uint64_t seed : ctx.seeds) {
      harness::RunConfig cfg =
          harness::DefaultRunConfig(env, Algo::kDrlrSac);
      cfg.train.seed = seed;
      cfg.train.ref_kind = core::RefKind::kTd3Bc;
      cfg.train.eval_every = cfg.train.total_steps / 10;
      cfg.demo_file = demos;
      cfg.demo_corruption = corruption;
      configs.push_back(cfg);
    }
  }
  std::vector<std::string> errors;
  const std::vector<harness::RunSummary> runs =
      RunAll(configs, fs::path(ctx.out_root) / "expD", &errors);
  const double bc = MeanOf(runs, AlgoIs("bc", "half_random"), true);
  const double td3bc = MeanOf(runs, AlgoIs("td3bc", "half_random"), true);
  const double clean = MeanOf(runs, AlgoIs("drlr_sac", "none"));
  const double corrupt = MeanOf(runs, AlgoIs("drlr_sac", "half_random"));
  const bool a = td3bc - bc >= 0.3;
  const bool b = corrupt >= 0.8 * clean;
  Outcome out;
  out.pass = a && b;
  out.detail = Fmt(
      "(a) half_random success td3bc %.3f vs bc %.3f, gap %.3f (need >= 0.3, "
      "100 eval episodes per seed) %s; (b) drlr_sac[td3bc ref] return "
      "half_random %.3f vs clean %.3f (need >= 0.8x) %s",
      td3bc, bc, td3bc - bc, a ? "ok" : "FAIL", corrupt, clean,
      b ? "ok" : "FAIL");
  return WithErrors(out, errors);
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome Determinism(const ExpContext& ctx) {
  const std::string env = "point_reach:sparse";
  const std::string demos = DemoPath(ctx, env);
  std::vector<harness::RunConfig> configs;
  for (Algo algo : core::AllAlgos()) {
    harness::RunConfig cfg = harness::DefaultRunConfig(env, algo);
    cfg.demo_file = demos;
    cfg.train.seed = 10;
    if (algo == Algo::kDrlrSac) {
      cfg.train.eval_every = cfg.train.total_steps / 10;
    } else {
      cfg.train.total_steps = 2000;
      cfg.train.eval_every = 500;
    }
    if (algo == Algo::kTd3Bc) cfg.demo_corruption = "noisy:0.3";
    if (algo == Algo::kIbrlSac) cfg.demo_corruption = "half_random";
    configs.push_back(cfg);
  }
  const fs::path root = fs::path(ctx.out_root) / "determinism";
  std::vector<std::string> errors;
  const std::vector<harness::RunSummary> first =
      RunAll(configs, root / "a", &errors);
  const std::vector<harness::RunSummary> second =
      RunAll(configs, root / "b", &errors);
  int identical = 0;
  std::string differing;
  for (std::size_t i = 0; i < first.size() && i < second.size(); ++i) {
    const std::string a = ReadFile(fs::path(first[i].run_dir) / "metrics.csv");
    const std::string b = ReadFile(fs::path(second[i].run_dir) / "metrics.csv");
    if (!a.empty() && a == b) {
      ++identical;
    } else {
      differing += " " + first[i].algo;
    }
  }
  Outcome out;
  out.pass = identical == static_cast<int>(configs.size());
  out.detail = Fmt("%d/%zu RunConfigs byte-identical metric CSVs on %s",
                   identical, configs.size(), env.c_str());
  if (!differing.empty()) out.detail += "; differ:" + differing;
  return WithErrors(out, errors);
}

}  // namespace
}  // namespace drlr::acceptance

int main(int argc, char** argv) {
  using namespace drlr::acceptance;
  CLI::App app{"DRLR acceptance checks"};
  std::vector<int> criteria;
  ExpContext ctx;
  ctx.out_root = (fs::temp_directory_path() / "drlr_acceptance").string();
  app.add_option("--criterion", criteria, "Criteria to run (default: all)")
      ->check(CLI::Range(1, 10));
  app.add_option("--out", ctx.out_root, "Root directory for training runs");
  app.add_option("--seeds", ctx.seeds, "Seeds for the experiment analogs")
      ->delimiter(',');
  CLI11_PARSE(app, argc, argv);
  if (criteria.empty()) criteria = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

  const std::map<int, std::pair<const char*, std::function<Outcome()>>> all = {
      {1, {"gradient correctness", GradientCorrectness}},
      {2, {"Bellman-operator oracles", BellmanOracles}},
      {3, {"selection rules", SelectionRules}},
      {4, {"tabular equivalence", TabularEquivalence}},
      {5, {"admittance closed forms", AdmittanceClosedForms}},
      {6, {"experiment B analog", [&] { return ExperimentB(ctx); }}},
      {7, {"experiment C analog", [&] { return ExperimentC(ctx); }}},
      {8, {"experiment D analog", [&] { return ExperimentD(ctx); }}},
      {9, {"ScoopLoader reward contract", ScoopLoaderContract}},
      {10, {"determinism", [&] { return Determinism(ctx); }}},
  };
  int failures = 0;
  for (int c : criteria) {
    const auto& [name, check] = all.at(c);
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = check();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    std::printf("criterion %d (%s): %s  %s [%.1fs]\n", c, name,
                out.pass ? "PASS" : "FAIL", out.detail.c_str(), secs);
    std::fflush(stdout);
    failures += out.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}

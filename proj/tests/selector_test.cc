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

#include <cmath>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "drlr/agents/losses.h"
#include "drlr/agents/networks.h"
#include "drlr/buffers/demo_buffer.h"
#include "drlr/buffers/replay_buffer.h"
#include "drlr/core/selector.h"
#include "drlr/nn/mlp.h"
#include "drlr/rng.h"
#include "support/oracles.h"

namespace drlr::core {
namespace {

constexpr int kSdim = 2;
constexpr int kAdim = 1;

RefPolicy ConstantRef(double action, int sdim = kSdim, int adim = kAdim) {
  RefPolicy r;
  r.policy.trunk.layer_sizes = {sdim, adim};
  r.policy.trunk.activation = nn::Activation::kIdentity;
  r.policy.trunk.weights = {Eigen::MatrixXd::Zero(adim, sdim)};
  r.policy.trunk.biases = {Eigen::VectorXd::Constant(adim, std::atanh(action))};
  return r;
}

// Q(s, a) = w * a + v * sum(s) + shift on both heads.
agents::TwinCritic LinearCritic(double w, double v = 0.0, double shift = 0.0) {
  nn::MlpParams p;
  p.layer_sizes = {kSdim + kAdim, 1};
  p.activation = nn::Activation::kIdentity;
  p.weights = {Eigen::MatrixXd::Zero(1, kSdim + kAdim)};
  for (int i = 0; i < kSdim; ++i) p.weights[0](0, i) = v;
  p.weights[0](0, kSdim) = w;
  p.biases = {Eigen::VectorXd::Constant(1, shift)};
  return {p, p};
}

// Demo states are all equal to `level` in every coordinate.
DemoBuffer ConstantDemo(double level, int transitions = 20) {
  std::vector<Transition> ep;
  for (int k = 0; k < transitions; ++k) {
    Transition t;
    t.state = Eigen::VectorXd::Constant(kSdim, level);
    t.action = Eigen::VectorXd::Constant(kAdim, 0.0);
    t.reward = 0.0;
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
    t.reward = 0.0;
    t.next_state = t.state;
    ep.push_back(t);
  }
  return DemoBuffer(kSdim, kAdim, {ep});
}

SelectorConfig DrlrConfig(int eval_batch = 16) {
  SelectorConfig c;
  c.mode = SelectorMode::kDrlr;
  c.demo_eval_batch = eval_batch;
  return c;
}

SelectorConfig Hard() {
  SelectorConfig c;
  c.mode = SelectorMode::kIbrlHard;
  return c;
}

double OracleQ(const agents::TwinCritic& c, const Eigen::VectorXd& s,
               const Eigen::VectorXd& a) {
  Eigen::VectorXd x(s.size() + a.size());
  x << s, a;
  return std::min(nn::Forward(c.q1, x)(0), nn::Forward(c.q2, x)(0));
}

// Transcription of the IBRL backup: r + gamma * max over both candidates.
Eigen::VectorXd OracleIbrlTarget(const Batch& b, const RefPolicy& ref,
                                 const Eigen::MatrixXd& rl_next,
                                 const agents::TwinCritic& c, double gamma) {
  Eigen::VectorXd y(b.size());
  for (int j = 0; j < b.size(); ++j) {
    const Eigen::VectorXd s2 = b.next_states.col(j);
    const Eigen::VectorXd a_il =
        nn::Forward(ref.policy.trunk, s2).array().tanh().matrix();
    const double q = std::max(OracleQ(c, s2, a_il),
                              OracleQ(c, s2, Eigen::VectorXd(rl_next.col(j))));
    y(j) = b.rewards(j) + gamma * b.not_done(j) * q;
  }
  return y;
}

Batch FourTransitions() {
  Batch b;
  b.states = Eigen::MatrixXd::Zero(kSdim, 4);
  b.actions = Eigen::MatrixXd::Zero(kAdim, 4);
  b.rewards = Eigen::Vector4d(0.0, 1.0, -0.5, 2.0);
  b.next_states = Eigen::MatrixXd::Zero(kSdim, 4);
  b.not_done = Eigen::Vector4d(1.0, 1.0, 0.0, 1.0);
  return b;
}

TEST(IbrlPropose, HardPicksHigherQ) {
  Rng rng(1);
  const Eigen::VectorXd s = Eigen::VectorXd::Zero(kSdim);
  // Q = 10 a: ref action 0.5 -> 5, rl action 0.3 -> 3.
  Proposal p = IbrlPropose(s, ConstantRef(0.5), Eigen::VectorXd::Constant(1, 0.3),
                           LinearCritic(10.0), Hard(), rng, 7);
  EXPECT_NEAR(p.decision.q_ref, 5.0, 1e-12);
  EXPECT_NEAR(p.decision.q_rl, 3.0, 1e-12);
  EXPECT_EQ(p.decision.chosen, Branch::kRef);
  EXPECT_EQ(p.decision.step, 7);
  EXPECT_NEAR(p.action(0), 0.5, 1e-12);
}

TEST(IbrlPropose, TieGoesToRl) {
  Rng rng(1);
  Proposal p = IbrlPropose(Eigen::VectorXd::Zero(kSdim), ConstantRef(0.5),
                           Eigen::VectorXd::Constant(1, -0.2),
                           testing::ConstantCritic(kSdim, kAdim, 3.0, 3.0),
                           Hard(), rng);
  EXPECT_EQ(p.decision.chosen, Branch::kRl);
  EXPECT_EQ(p.action(0), -0.2);
}

TEST(IbrlPropose, HardChoiceInvariantUnderPositiveAffineRescaling) {
  Rng rng(2);
  const RefPolicy ref{RefKind::kBc, testing::SmallPolicy(kSdim, kAdim, 6, 3)};
  for (int t = 0; t < 200; ++t) {
    const Eigen::VectorXd s = testing::RandomMatrix(rng, kSdim, 1).col(0);
    const Eigen::VectorXd a = testing::RandomMatrix(rng, kAdim, 1).col(0);
    agents::TwinCritic c = testing::SmallCritic(kSdim, kAdim, 6, 100 + t);
    agents::TwinCritic scaled = c;
    const double k = Uniform(rng, 0.1, 10.0);
    const double shift = Uniform(rng, -5.0, 5.0);
    for (nn::MlpParams* head : {&scaled.q1, &scaled.q2}) {
      head->weights.back() *= k;
      head->biases.back() = head->biases.back() * k +
                            Eigen::VectorXd::Constant(1, shift);
    }
    const Branch b1 = IbrlPropose(s, ref, a, c, Hard(), rng).decision.chosen;
    const Branch b2 =
        IbrlPropose(s, ref, a, scaled, Hard(), rng).decision.chosen;
    EXPECT_EQ(b1, b2);
  }
}

class SoftFrequency : public ::testing::TestWithParam<double> {};

TEST_P(SoftFrequency, MatchesBoltzmannProbability) {
  const double temperature = GetParam();
  SelectorConfig cfg;
  cfg.mode = SelectorMode::kIbrlSoft;
  cfg.softmax_temperature = temperature;
  Rng rng(3);
  // Q = a: q_ref = 0.4, q_rl = 0.1.
  const agents::TwinCritic critic = LinearCritic(1.0);
  const RefPolicy ref = ConstantRef(0.4);
  const Eigen::VectorXd s = Eigen::VectorXd::Zero(kSdim);
  const Eigen::VectorXd a = Eigen::VectorXd::Constant(1, 0.1);
  const int draws = 10000;
  int refs = 0;
  for (int i = 0; i < draws; ++i) {
    refs += IbrlPropose(s, ref, a, critic, cfg, rng).decision.chosen ==
                    Branch::kRef
                ? 1
                : 0;
  }
  const double expected = testing::BoltzmannRefProbability(0.4, 0.1, temperature);
  EXPECT_NEAR(SoftRefProbability(0.4, 0.1, temperature), expected, 1e-12);
  EXPECT_NEAR(refs / static_cast<double>(draws), expected, 0.02);
}

INSTANTIATE_TEST_SUITE_P(Temperatures, SoftFrequency,
                         ::testing::Values(0.1, 1.0, 10.0));

TEST(IbrlPropose, SoftEqualQsGiveHalf) {
  SelectorConfig cfg;
  cfg.mode = SelectorMode::kIbrlSoft;
  Rng rng(4);
  int refs = 0;
  for (int i = 0; i < 10000; ++i) {
    refs += IbrlPropose(Eigen::VectorXd::Zero(kSdim), ConstantRef(0.4),
                        Eigen::VectorXd::Constant(1, 0.1),
                        testing::ConstantCritic(kSdim, kAdim, 1.0, 1.0), cfg,
                        rng)
                        .decision.chosen == Branch::kRef
                ? 1
                : 0;
  }
  EXPECT_NEAR(refs / 10000.0, 0.5, 0.02);
}

TEST(IbrlBellmanTarget, HandBuiltExample) {
  Rng rng(5);
  Batch b = FourTransitions();
  b.rewards(0) = 0.0;
  // Q = 4 a: ref action 0.25 -> 1, rl action 0.5 -> 2.
  const Eigen::VectorXd y =
      IbrlBellmanTarget(b, ConstantRef(0.25), Eigen::MatrixXd::Constant(1, 4, 0.5),
                        Eigen::VectorXd::Zero(4), LinearCritic(4.0), 0.99, 0.0,
                        Hard(), rng);
  EXPECT_NEAR(y(0), 1.98, 1e-12);
  EXPECT_EQ(y(2), -0.5);
}

TEST(IbrlBellmanTarget, ZeroDiscountAndEqualCandidates) {
  Rng rng(6);
  const Batch b = FourTransitions();
  const agents::TwinCritic c = testing::ConstantCritic(kSdim, kAdim, 2.0, 2.5);
  const Eigen::VectorXd y0 =
      IbrlBellmanTarget(b, ConstantRef(0.3), Eigen::MatrixXd::Zero(1, 4),
                        Eigen::VectorXd::Zero(4), c, 0.0, 0.0, Hard(), rng);
  EXPECT_EQ(y0, b.rewards);
  const Eigen::VectorXd y1 =
      IbrlBellmanTarget(b, ConstantRef(0.3), Eigen::MatrixXd::Zero(1, 4),
                        Eigen::VectorXd::Zero(4), c, 0.9, 0.0, Hard(), rng);
  const Eigen::VectorXd y2 =
      IbrlBellmanTarget(b, ConstantRef(-0.7), Eigen::MatrixXd::Ones(1, 4) * 0.8,
                        Eigen::VectorXd::Zero(4), c, 0.9, 0.0, Hard(), rng);
  for (int j = 0; j < 4; ++j) {
    EXPECT_NEAR(y1(j), b.rewards(j) + 0.9 * b.not_done(j) * 2.0, 1e-12);
  }
  EXPECT_EQ(y1, y2);
}

TEST(IbrlBellmanTarget, MatchesTranscriptionOracle) {
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    const agents::TwinCritic c = testing::SmallCritic(kSdim, kAdim, 8, 200 + t);
    const RefPolicy ref{RefKind::kBc,
                        testing::SmallPolicy(kSdim, kAdim, 8, 300 + t)};
    Batch b = testing::RandomBatch(rng, kSdim, kAdim, 4);
    b.not_done(t % 4) = 0.0;
    const Eigen::MatrixXd rl = testing::RandomMatrix(rng, kAdim, 4, 0.9);
    const Eigen::VectorXd y = IbrlBellmanTarget(
        b, ref, rl, Eigen::VectorXd::Zero(4), c, 0.99, 0.0, Hard(), rng);
    const Eigen::VectorXd oracle = OracleIbrlTarget(b, ref, rl, c, 0.99);
    EXPECT_LT((y - oracle).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(DrlrSelect, RefWinsWhenDemoMeanIsHigher) {
  Rng rng(8);
  // Q = sum(s): demo states at 1 give q_ref = 2; query states at 0.5 give 1.
  const DemoBuffer demo = ConstantDemo(1.0);
  const Eigen::MatrixXd query = Eigen::MatrixXd::Constant(kSdim, 5, 0.5);
  const Eigen::MatrixXd rl = Eigen::MatrixXd::Constant(kAdim, 5, -0.3);
  const RefPolicy ref = ConstantRef(0.6);
  Selection sel = DrlrSelect(query, ref, rl, LinearCritic(0.0, 1.0), demo,
                             DrlrConfig(), rng, Phase::kBootstrapProposal, 3);
  EXPECT_NEAR(sel.decision.q_ref, 2.0, 1e-12);
  EXPECT_NEAR(sel.decision.q_rl, 1.0, 1e-12);
  EXPECT_EQ(sel.decision.chosen, Branch::kRef);
  EXPECT_EQ(sel.decision.phase, Phase::kBootstrapProposal);
  EXPECT_EQ(sel.decision.step, 3);
  EXPECT_EQ(sel.actions, ref.policy.Act(query));
}

TEST(DrlrSelect, RlWinsWhenQueryMeanIsHigher) {
  Rng rng(9);
  const DemoBuffer demo = ConstantDemo(0.2);
  const Eigen::MatrixXd query = Eigen::MatrixXd::Constant(kSdim, 5, 0.5);
  const Eigen::MatrixXd rl = Eigen::MatrixXd::Constant(kAdim, 5, -0.3);
  Selection sel = DrlrSelect(query, ConstantRef(0.6), rl, LinearCritic(0.0, 1.0),
                             demo, DrlrConfig(), rng);
  EXPECT_EQ(sel.decision.chosen, Branch::kRl);
  EXPECT_EQ(sel.actions, rl);
}

TEST(DrlrSelect, ConstantCriticTiesToRl) {
  Rng rng(10);
  Selection sel = DrlrSelect(Eigen::MatrixXd::Zero(kSdim, 3), ConstantRef(0.6),
                             Eigen::MatrixXd::Zero(kAdim, 3),
                             testing::ConstantCritic(kSdim, kAdim, 1.5, 4.0),
                             ConstantDemo(1.0), DrlrConfig(), rng);
  EXPECT_EQ(sel.decision.q_ref, 1.5);
  EXPECT_EQ(sel.decision.q_rl, 1.5);
  EXPECT_EQ(sel.decision.chosen, Branch::kRl);
}

TEST(DrlrSelect, EmptyDemoThrows) {
  Rng rng(11);
  EXPECT_THROW(DrlrSelect(Eigen::MatrixXd::Zero(kSdim, 1), ConstantRef(0.1),
                          Eigen::MatrixXd::Zero(kAdim, 1), LinearCritic(1.0),
                          DemoBuffer(), DrlrConfig(), rng),
               std::invalid_argument);
}

TEST(DrlrSelect, BranchInvariantUnderConstantShift) {
  Rng rng(12);
  const DemoBuffer demo = RandomDemo(rng, 40);
  for (int t = 0; t < 200; ++t) {
    const agents::TwinCritic c = testing::SmallCritic(kSdim, kAdim, 6, 400 + t);
    agents::TwinCritic shifted = c;
    const double shift = Uniform(rng, -20.0, 20.0);
    shifted.q1.biases.back()(0) += shift;
    shifted.q2.biases.back()(0) += shift;
    const RefPolicy ref{RefKind::kBc, testing::SmallPolicy(kSdim, kAdim, 6, t)};
    const Eigen::MatrixXd query = testing::RandomMatrix(rng, kSdim, 8);
    const Eigen::MatrixXd rl = testing::RandomMatrix(rng, kAdim, 8, 0.9);
    Rng r1(1000 + t);
    Rng r2(1000 + t);
    const Selection a = DrlrSelect(query, ref, rl, c, demo, DrlrConfig(), r1);
    const Selection b =
        DrlrSelect(query, ref, rl, shifted, demo, DrlrConfig(), r2);
    EXPECT_EQ(a.decision.chosen, b.decision.chosen);
    EXPECT_NEAR(b.decision.q_ref - a.decision.q_ref, shift, 1e-9);
  }
}

TEST(DrlrSelect, RefQueriesOnlyDemoStates) {
  Rng rng(13);
  const DemoBuffer demo = RandomDemo(rng, 30);
  const agents::TwinCritic c = testing::SmallCritic(kSdim, kAdim, 6, 5);
  const RefPolicy ref{RefKind::kBc, testing::SmallPolicy(kSdim, kAdim, 6, 6)};
  const Eigen::MatrixXd query = testing::RandomMatrix(rng, kSdim, 4, 3.0);
  const Eigen::MatrixXd rl = testing::RandomMatrix(rng, kAdim, 4, 0.9);
  const Selection sel = DrlrSelect(query, ref, rl, c, demo, DrlrConfig(64), rng);
  ASSERT_EQ(sel.demo_indices.size(), 64u);
  double mean = 0.0;
  for (std::size_t idx : sel.demo_indices) {
    ASSERT_LT(idx, demo.size());
    const Eigen::VectorXd s = demo.at(idx).state;
    mean += OracleQ(c, s, nn::Forward(ref.policy.trunk, s).array().tanh().matrix());
  }
  EXPECT_NEAR(sel.decision.q_ref, mean / 64.0, 1e-12);
}

TEST(DrlrSelect, SingleStateOnlineProposal) {
  Rng rng(14);
  const Selection sel =
      DrlrSelect(Eigen::MatrixXd::Constant(kSdim, 1, 0.1), ConstantRef(0.6),
                 Eigen::MatrixXd::Constant(kAdim, 1, 0.2),
                 LinearCritic(0.0, 1.0), ConstantDemo(1.0), DrlrConfig(), rng);
  EXPECT_NEAR(sel.decision.q_rl, 0.2, 1e-12);
  EXPECT_EQ(sel.decision.chosen, Branch::kRef);
  EXPECT_NEAR(sel.actions(0, 0), 0.6, 1e-12);
}

TEST(DrlrBellmanTarget, RefBranchConstantCritic) {
  Rng rng(15);
  // Q1 = 2 + sum(s), Q2 larger; demo states at 1 give q_ref = 4 > q_rl = 2.
  agents::TwinCritic c = LinearCritic(0.0, 1.0, 2.0);
  c.q2.biases[0](0) = 10.0;
  const Batch b = FourTransitions();
  DrlrTarget t = DrlrBellmanTarget(
      b, ConstantDemo(1.0), ConstantRef(0.3), Eigen::MatrixXd::Zero(kAdim, 4),
      Eigen::VectorXd::Constant(4, 5.0), c, 0.99, 0.7, DrlrConfig(), rng, 9);
  EXPECT_EQ(t.selection.decision.chosen, Branch::kRef);
  EXPECT_EQ(t.selection.decision.phase, Phase::kBootstrapProposal);
  for (int j = 0; j < 4; ++j) {
    const double expected = b.rewards(j) + 0.99 * b.not_done(j) * 2.0;
    EXPECT_NEAR(t.targets(j), expected, 1e-12);
  }
  EXPECT_EQ(t.targets(2), b.rewards(2));
}

TEST(DrlrBellmanTarget, RlBranchIncludesEntropy) {
  Rng rng(16);
  const Batch b = FourTransitions();
  const agents::TwinCritic c = testing::ConstantCritic(kSdim, kAdim, 1.0, 3.0);
  const Eigen::VectorXd logp = Eigen::Vector4d(-2.0, -1.0, 0.5, 0.0);
  DrlrTarget t = DrlrBellmanTarget(b, ConstantDemo(1.0), ConstantRef(0.3),
                                   Eigen::MatrixXd::Zero(kAdim, 4), logp, c,
                                   0.99, 0.5, DrlrConfig(), rng);
  EXPECT_EQ(t.selection.decision.chosen, Branch::kRl);
  EXPECT_NEAR(t.targets(0), 0.99 * (1.0 + 0.5 * 2.0), 1e-12);
  EXPECT_NEAR(t.targets(0), 1.98, 1e-12);
  EXPECT_EQ(t.targets(2), -0.5);
}

TEST(DrlrBellmanTarget, ZeroAlphaRlBranchMatchesPlainBootstrap) {
  Rng rng(17);
  for (int k = 0; k < 20; ++k) {
    const agents::TwinCritic c = testing::SmallCritic(kSdim, kAdim, 8, 500 + k);
    Batch b = testing::RandomBatch(rng, kSdim, kAdim, 4);
    b.not_done(1) = 0.0;
    const Eigen::MatrixXd rl = testing::RandomMatrix(rng, kAdim, 4, 0.9);
    const DemoBuffer demo = RandomDemo(rng, 10);
    DrlrTarget t = DrlrBellmanTarget(b, demo, ConstantRef(0.1), rl,
                                     testing::RandomMatrix(rng, 4, 1).col(0),
                                     c, 0.99, 0.0, DrlrConfig(), rng);
    Eigen::VectorXd expected;
    if (t.selection.decision.chosen == Branch::kRl) {
      expected = agents::BootstrapTarget(c, b, rl, 0.99);
    } else {
      expected = agents::BootstrapTarget(
          c, b, ConstantRef(0.1).policy.Act(b.next_states), 0.99);
    }
    EXPECT_LT((t.targets - expected).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(DrlrBellmanTarget, WrongModeThrows) {
  Rng rng(18);
  EXPECT_THROW(DrlrBellmanTarget(FourTransitions(), ConstantDemo(1.0),
                                 ConstantRef(0.1), Eigen::MatrixXd::Zero(1, 4),
                                 Eigen::VectorXd::Zero(4), LinearCritic(1.0),
                                 0.99, 0.0, Hard(), rng),
               std::invalid_argument);
}

TEST(MixedMinibatch, CountsFollowRatio) {
  Rng rng(19);
  ReplayBuffer replay(100, kSdim, kAdim);
  for (int i = 0; i < 50; ++i) {
    Transition t;
    t.state = Eigen::VectorXd::Constant(kSdim, -1.0);
    t.action = Eigen::VectorXd::Zero(kAdim);
    t.reward = -1.0;
    t.next_state = t.state;
    replay.Push(t);
  }
  const DemoBuffer demo = ConstantDemo(1.0);
  auto count_demo = [](const Batch& b) {
    return static_cast<int>((b.states.row(0).array() > 0.0).count());
  };
  const Batch half = MixedMinibatch(replay, demo, 128, 0.5, rng);
  EXPECT_EQ(half.size(), 128);
  EXPECT_EQ(count_demo(half), 64);
  EXPECT_EQ(count_demo(MixedMinibatch(replay, demo, 16, 0.0, rng)), 0);
  EXPECT_EQ(count_demo(MixedMinibatch(replay, demo, 16, 1.0, rng)), 16);
  EXPECT_EQ(count_demo(MixedMinibatch(replay, demo, 5, 0.5, rng)), 3);
  EXPECT_THROW(MixedMinibatch(ReplayBuffer(4, kSdim, kAdim), demo, 8, 0.5, rng),
               std::runtime_error);
  EXPECT_THROW(MixedMinibatch(replay, DemoBuffer(), 8, 0.5, rng),
               std::runtime_error);
}

TEST(SelectorConfig, ValidationRejectsBadValues) {
  SelectorConfig c;
  c.softmax_temperature = 0.0;
  EXPECT_THROW(Validate(c), std::invalid_argument);
  c.softmax_temperature = 1.0;
  c.demo_eval_batch = 0;
  EXPECT_THROW(Validate(c), std::invalid_argument);
}

}  // namespace
}  // namespace drlr::core

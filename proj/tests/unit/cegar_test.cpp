// Copyright 2026 The cgplan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "cgplan/abstraction.hpp"
#include "cgplan/cegar.hpp"
#include "cgplan/game.hpp"
#include "cgplan/io.hpp"
#include "cgplan/solver.hpp"
#include "support/corpus.hpp"

namespace cgplan {
namespace {

using Blocks = std::vector<std::vector<StateId>>;
using States = std::vector<StateId>;

Abstraction Abstract(const Game& g, Blocks blocks) {
  return BuildAbstraction(g, StatePartition::FromBlocks(g.num_states(), std::move(blocks)));
}

// v0 (P1) -> a, b (owner given); a -> w; b -> z; a, b -> z2 when `both`.
Game Pair(Owner owner, bool both, double ra = 0.0, double rb = 0.0) {
  GameBuilder b;
  b.AddState(Owner::kPlayer1, 0.0, "v0");
  b.AddState(owner, ra, "a");
  b.AddState(owner, rb, "b");
  b.AddState(Owner::kPlayer1, 1.0, "w");
  b.AddState(Owner::kPlayer1, 0.0, "z");
  b.AddEdge(0, 1);
  b.AddEdge(0, 2);
  b.AddEdge(1, 3);
  b.AddEdge(1, 4);
  b.AddEdge(2, 4);
  if (both) b.AddEdge(2, 3);
  b.AddEdge(3, 3);
  b.AddEdge(4, 4);
  return b.Build();
}

TEST(FocusTest, PlayerTwoKeepsStatesThatFollowTheSpoiler) {
  const Game g = Pair(Owner::kPlayer2, false);
  const auto abs = Abstract(g, {{0}, {1, 2}, {3}, {4}});
  MemorylessStrategy f2 = FirstChoiceStrategy(abs.game, Player::kTwo);
  f2.choice[1] = 2;
  EXPECT_EQ(FocusP2(g, abs, 1, f2), (States{1}));
  f2.choice[1] = 3;
  EXPECT_EQ(FocusP2(g, abs, 1, f2), (States{1, 2}));
}

TEST(FocusTest, PlayerOneKeepsStatesSeeingBetterBlocks) {
  const Game g = Pair(Owner::kPlayer1, false);
  const auto abs = Abstract(g, {{0}, {1, 2}, {3}, {4}});
  const ValueFunction val{0.0, 0.0, 1.0, 0.0};
  EXPECT_EQ(FocusP1(g, abs, 1, val), (States{1}));
  const ValueFunction flat{0.0, 1.0, 1.0, 0.0};
  EXPECT_TRUE(FocusP1(g, abs, 1, flat).empty());
  // Gains within the margin are ignored.
  const ValueFunction close{0.0, 1.0, 1.0 + 1e-12, 0.0};
  EXPECT_TRUE(FocusP1(g, abs, 1, close).empty());
}

TEST(FocusTest, SingletonAbstractionHasNoProfitableEdges) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Game g = testing::CorpusGame(seed);
    Blocks singletons(g.num_states());
    for (StateId v = 0; v < g.num_states(); ++v) singletons[v] = {v};
    const auto abs = Abstract(g, singletons);
    const auto avg = SolveGameValues(abs.game, Objective::Average()).val1;
    const double beta = 0.9;
    const auto disc = SolveGameValues(abs.game, Objective::Discounted(beta)).val1;
    for (StateId b = 0; b < abs.game.num_states(); ++b) {
      if (abs.game.owner(b) != Owner::kPlayer1) continue;
      EXPECT_TRUE(FocusP1(g, abs, b, avg, 1e-6).empty()) << "seed " << seed;
      // Discounted values compare through the Bellman backup instead.
      for (const Edge& e : g.successors(b)) {
        EXPECT_LE(g.reward(b) + beta * disc[e.to], disc[b] + 1e-6) << "seed " << seed;
      }
    }
  }
}

TEST(FocusTest, ValueFocusKeepsMinimalRewards) {
  GameBuilder b;
  for (double r : {0.1, 0.1, 0.3}) b.AddState(Owner::kPlayer1, r);
  for (StateId v = 0; v < 3; ++v) b.AddEdge(v, v);
  const Game g = b.Build();
  const auto abs = Abstract(g, {{0, 1, 2}});
  EXPECT_EQ(ValueFocus(g, abs, 0), (States{0, 1}));
  const auto uniform = Abstract(g, {{0, 1}, {2}});
  EXPECT_EQ(ValueFocus(g, uniform, 0), (States{0, 1}));
}

TEST(CegarStepTest, SingletonAbstractionIsGenuine) {
  const Game g = Pair(Owner::kPlayer2, false);
  const auto abs = Abstract(g, {{0}, {1}, {2}, {3}, {4}});
  const auto solved = SolveGameValues(abs.game, Objective::Average());
  EXPECT_TRUE(std::holds_alternative<Genuine>(CegarStep(g, abs, solved.opt2, solved.val1)));
}

TEST(CegarStepTest, SplittablePlayerTwoBlockAddsOneBlock) {
  const Game g = Pair(Owner::kPlayer2, false);
  const auto abs = Abstract(g, {{0}, {1, 2}, {3}, {4}});
  MemorylessStrategy f2 = FirstChoiceStrategy(abs.game, Player::kTwo);
  f2.choice[1] = 2;
  const auto val = SolveGameValues(abs.game, Objective::Average()).val1;
  const auto out = CegarStep(g, abs, f2, val);
  ASSERT_TRUE(std::holds_alternative<Spurious>(out));
  const auto& s = std::get<Spurious>(out);
  EXPECT_EQ(s.op, SplitOperator::kFocusP2);
  EXPECT_EQ(s.split_block, 1u);
  EXPECT_EQ(s.subset, (States{1}));
  EXPECT_EQ(s.refined.partition.size(), abs.partition.size() + 1);
}

TEST(CegarStepTest, ValueFocusSplitsMixedRewards) {
  const Game g = Pair(Owner::kPlayer1, true, 0.2, 0.6);
  const auto abs = Abstract(g, {{0}, {1, 2}, {3}, {4}});
  const auto solved = SolveGameValues(abs.game, Objective::Average());
  const auto out = CegarStep(g, abs, solved.opt2, solved.val1);
  ASSERT_TRUE(std::holds_alternative<Spurious>(out));
  EXPECT_EQ(std::get<Spurious>(out).op, SplitOperator::kValueFocus);
  EXPECT_EQ(std::get<Spurious>(out).subset, (States{1}));
}

TEST(CegarStepTest, SignatureFallbackSeparatesDisagreeingMembers) {
  // a -> x; b -> x, z with z worse than x: no focus operator applies.
  GameBuilder b;
  b.AddState(Owner::kPlayer1, 0.0, "v0");
  b.AddState(Owner::kPlayer1, 0.5, "a");
  b.AddState(Owner::kPlayer1, 0.5, "b");
  b.AddState(Owner::kPlayer1, 0.5, "x");
  b.AddState(Owner::kPlayer1, 0.0, "z");
  b.AddEdge(0, 1);
  b.AddEdge(0, 2);
  b.AddEdge(1, 3);
  b.AddEdge(2, 3);
  b.AddEdge(2, 4);
  b.AddEdge(3, 3);
  b.AddEdge(4, 4);
  const Game g = b.Build();
  const auto abs = Abstract(g, {{0}, {1, 2}, {3}, {4}});
  const auto solved = SolveGameValues(abs.game, Objective::Average());
  EXPECT_TRUE(FocusP1(g, abs, 1, solved.val1).empty());
  const auto out = CegarStep(g, abs, solved.opt2, solved.val1);
  ASSERT_TRUE(std::holds_alternative<Spurious>(out));
  EXPECT_EQ(std::get<Spurious>(out).op, SplitOperator::kSignature);
  EXPECT_EQ(std::get<Spurious>(out).subset, (States{2}));
}

TEST(CegarStepTest, IsDeterministic) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Game g = testing::CorpusGame(seed);
    const auto abs = BuildAbstraction(g, testing::RandomPartition(g, seed));
    const auto solved = SolveGameValues(abs.game, Objective::Average());
    const auto a = CegarStep(g, abs, solved.opt2, solved.val1);
    const auto b = CegarStep(g, abs, solved.opt2, solved.val1);
    ASSERT_EQ(a.index(), b.index());
    if (const auto* sa = std::get_if<Spurious>(&a)) {
      const auto& sb = std::get<Spurious>(b);
      EXPECT_EQ(sa->split_block, sb.split_block);
      EXPECT_EQ(sa->op, sb.op);
      EXPECT_EQ(sa->subset, sb.subset);
      EXPECT_EQ(sa->refined.partition, sb.refined.partition);
    }
  }
}

TEST(PlanTest, DemoGameStoryline) {
  const Game g = testing::DemoGame();
  const auto out = CounterexampleGuidedPlan(g, Objective::Average(), 0.5);
  ASSERT_TRUE(out.feasible());
  ASSERT_EQ(out.refinements(), 2u);
  EXPECT_NEAR(out.trace[0].abstract_val1_v0, 0.15, 1e-6);
  EXPECT_EQ(out.trace[0].split_operator, SplitOperator::kValueFocus);
  EXPECT_NEAR(out.trace[1].abstract_val1_v0, 0.25, 1e-6);
  EXPECT_EQ(out.trace[1].split_operator, SplitOperator::kFocusP2);
  EXPECT_NEAR(out.trace[2].abstract_val1_v0, 0.6, 1e-6);
  EXPECT_FALSE(out.trace[2].split_operator.has_value());
  EXPECT_LT(out.final_abstraction.game.num_states(), g.num_states());
  EXPECT_TRUE(CertifyOutcome(g, Objective::Average(), 0.5, out).holds);
}

TEST(PlanTest, GoalAboveRewardCeilingIsInfeasible) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Game g = testing::CorpusGame(seed);
    const auto out = CounterexampleGuidedPlan(g, Objective::Average(), 1.5);
    EXPECT_FALSE(out.feasible());
    EXPECT_TRUE(CertifyOutcome(g, Objective::Average(), 1.5, out).holds);
  }
}

TEST(PlanTest, VerdictsMatchOracleAndCertify) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Game g = testing::CorpusGame(seed);
    for (const auto& obj : {Objective::Discounted(0.9), Objective::Average()}) {
      const double value = BruteForceValues(g, obj)[g.initial()];
      for (double offset : {-0.05, 0.05}) {
        const double p = value + offset;
        const auto out = CounterexampleGuidedPlan(g, obj, p);
        EXPECT_EQ(out.feasible(), offset < 0) << "seed " << seed;
        EXPECT_TRUE(CertifyOutcome(g, obj, p, out).holds) << "seed " << seed;
        EXPECT_LE(out.trace.size(), g.num_states() + 1);
      }
    }
  }
}

TEST(PlanTest, GridworldVerdictsCertify) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    GridworldParams params;
    params.seed = seed;
    params.width = 2 + seed % 4;
    params.height = 1 + seed % 3;
    params.slip = 0.1 * static_cast<double>(seed % 5);
    params.adversary = seed % 2 == 1;
    const Game g = GenerateGridworld(params);
    for (const auto& obj : {Objective::Discounted(0.9), Objective::Average()}) {
      const double value = SolveGameValues(g, obj).val1[g.initial()];
      for (double offset : {-0.05, 0.0, 0.05}) {
        const auto out = CounterexampleGuidedPlan(g, obj, value + offset);
        EXPECT_EQ(out.feasible(), offset <= 0.0) << "seed " << seed;
        EXPECT_TRUE(CertifyOutcome(g, obj, value + offset, out).holds) << "seed " << seed;
      }
    }
  }
}

TEST(PlanTest, SplitsNeverRepeatConsecutively) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Game g = testing::CorpusGame(seed);
    const auto obj = Objective::Average();
    const double p = BruteForceValues(g, obj)[g.initial()] + 0.05;
    const auto out = CounterexampleGuidedPlan(g, obj, p);
    for (std::size_t i = 1; i < out.trace.size(); ++i) {
      const auto& prev = out.trace[i - 1];
      const auto& cur = out.trace[i];
      if (!cur.split_operator) continue;
      EXPECT_FALSE(prev.split_members == cur.split_members &&
                   prev.split_operator == cur.split_operator)
          << "seed " << seed;
    }
  }
}

TEST(PlanTest, TraceRecordJson) {
  const Game g = testing::DemoGame();
  const auto out = CounterexampleGuidedPlan(g, Objective::Average(), 0.5);
  const auto first = TraceRecordToJson(g, out.trace[0]);
  EXPECT_EQ(first.at("iter"), 1);
  EXPECT_EQ(first.at("split_operator"), "VALUE_FOCUS");
  EXPECT_FALSE(first.at("split_block_members").empty());
  const auto last = TraceRecordToJson(g, out.trace.back());
  EXPECT_TRUE(last.at("split_operator").is_null());
  EXPECT_EQ(last.at("winner"), 1);
}

}  // namespace
}  // namespace cgplan

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

#include "cgplan/errors.hpp"
#include "cgplan/game.hpp"
#include "cgplan/game_io.hpp"
#include "support/corpus.hpp"

namespace cgplan {
namespace {

Game SelfLoop(Owner owner = Owner::kPlayer1) {
  GameBuilder b;
  b.AddState(owner, 1.0, "v0");
  b.AddEdge(0, 0, owner == Owner::kRandom ? std::optional<double>(1.0) : std::nullopt);
  return b.Build();
}

// v0 (P1) -> {v1 (P2), c (R)}; v1 -> {x, y}; c -> x 0.5, y 0.5; x, y sinks.
Game ThreeOwners() {
  return ParseGame(R"({
    "states": [
      {"name": "v0", "owner": "P1", "reward": 0},
      {"name": "v1", "owner": "P2", "reward": 0},
      {"name": "c",  "owner": "R",  "reward": 0},
      {"name": "x",  "owner": "P1", "reward": 0.3},
      {"name": "y",  "owner": "P1", "reward": 0.8}],
    "edges": [
      {"from": "v0", "to": "v1"}, {"from": "v0", "to": "c"},
      {"from": "v1", "to": "x"},  {"from": "v1", "to": "y"},
      {"from": "c", "to": "x", "weight": 0.5},
      {"from": "c", "to": "y", "weight": 0.5},
      {"from": "x", "to": "x"}, {"from": "y", "to": "y"}],
    "initial": "v0"})");
}

TEST(ValidateTest, SelfLoopIsValid) { EXPECT_TRUE(Validate(SelfLoop()).empty()); }

TEST(ValidateTest, WeightsMustSumToOne) {
  GameBuilder b;
  b.AddState(Owner::kRandom, 0.0, "c");
  b.AddState(Owner::kPlayer1, 0.0, "x");
  b.AddState(Owner::kPlayer1, 0.0, "y");
  b.AddEdge(0, 1, 0.5);
  b.AddEdge(0, 2, 0.6);
  b.AddEdge(1, 1);
  b.AddEdge(2, 2);
  const auto v = Validate(b.Build());
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].message.find("sum to 1.1 != 1"), std::string::npos) << v[0].message;
  EXPECT_EQ(v[0].state, 0u);
}

TEST(ValidateTest, DeadState) {
  GameBuilder b;
  b.AddState(Owner::kPlayer1, 0.0, "x");
  const auto v = Validate(b.Build());
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].message.find("dead state"), std::string::npos);
}

TEST(ValidateTest, StructuralViolations) {
  GameBuilder b;
  b.AddState(Owner::kPlayer1, 0.0, "a");
  b.AddState(Owner::kRandom, 0.0, "c");
  b.AddEdge(0, 1, 0.5);  // weight on a player edge
  b.AddEdge(1, 0);       // random edge without weight
  b.AddEdge(1, 1, 1.0);
  b.AddEdge(1, 1, 1.0);  // duplicate
  EXPECT_EQ(Validate(b.Build()).size(), 3u);
}

TEST(ValidateTest, ToleranceIsOneInABillion) {
  GameBuilder b;
  b.AddState(Owner::kRandom, 0.0, "c");
  b.AddState(Owner::kPlayer1, 0.0, "x");
  b.AddEdge(0, 1, 0.5 + 4e-10);
  b.AddEdge(0, 0, 0.5);
  b.AddEdge(1, 1);
  EXPECT_TRUE(Validate(b.Build()).empty());
}

TEST(ValidateTest, NegativeRewardsAllowed) {
  GameBuilder b;
  b.AddState(Owner::kPlayer2, -3.5, "v");
  b.AddEdge(0, 0);
  EXPECT_TRUE(Validate(b.Build()).empty());
}

TEST(GameTest, DuplicateNamesRejected) {
  EXPECT_THROW(ParseGame(R"({"states": [{"name": "a", "owner": "P1", "reward": 0},
      {"name": "a", "owner": "P1", "reward": 0}], "edges": [], "initial": "a"})"),
               InputError);
}

TEST(ClassifyTest, AllFourClasses) {
  EXPECT_EQ(Classify(SelfLoop()), GameClass::kTransitionSystem);
  EXPECT_EQ(Classify(ThreeOwners()), GameClass::kGame);

  GameBuilder mdp;
  mdp.AddState(Owner::kPlayer1, 0.0);
  mdp.AddState(Owner::kRandom, 0.0);
  mdp.AddEdge(0, 1);
  mdp.AddEdge(1, 0, 1.0);
  EXPECT_EQ(Classify(mdp.Build()), GameClass::kMdp);

  GameBuilder det;
  det.AddState(Owner::kPlayer1, 0.0);
  det.AddState(Owner::kPlayer2, 0.0);
  det.AddEdge(0, 1);
  det.AddEdge(1, 0);
  EXPECT_EQ(Classify(det.Build()), GameClass::kDeterministicGame);
}

TEST(RestrictTest, FixingPlayerOneLeavesAnMdp) {
  const Game g = ThreeOwners();
  MemorylessStrategy f1 = FirstChoiceStrategy(g, Player::kOne);
  const Game r = Restrict(g, f1);
  // Player-1 states keep one edge; classification drops the P1 choice.
  for (StateId v = 0; v < r.num_states(); ++v) {
    if (r.owner(v) == Owner::kPlayer1) EXPECT_EQ(r.successors(v).size(), 1u);
  }
  EXPECT_FALSE(IsMarkovChain(r));
  const Game chain = Restrict(r, FirstChoiceStrategy(g, Player::kTwo));
  EXPECT_TRUE(IsMarkovChain(chain));
}

TEST(RestrictTest, PreservesStatesRewardsAndOtherEdges) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Game g = testing::CorpusGame(seed);
    const auto f2 = FirstChoiceStrategy(g, Player::kTwo);
    const Game r = Restrict(g, f2);
    ASSERT_EQ(r.num_states(), g.num_states());
    for (StateId v = 0; v < g.num_states(); ++v) {
      EXPECT_EQ(r.reward(v), g.reward(v));
      if (g.owner(v) == Owner::kPlayer2) {
        ASSERT_EQ(r.successors(v).size(), 1u);
        EXPECT_EQ(r.successors(v)[0].to, f2(v));
        EXPECT_TRUE(g.HasEdge(v, f2(v)));
      } else {
        EXPECT_EQ(r.successors(v).size(), g.successors(v).size());
      }
    }
  }
}

TEST(RestrictTest, RejectsForeignChoice) {
  const Game g = ThreeOwners();
  MemorylessStrategy f1 = FirstChoiceStrategy(g, Player::kOne);
  f1.choice[0] = 3;  // v0 -> x is not an edge
  EXPECT_THROW(Restrict(g, f1), InputError);
}

TEST(DualGameTest, SwapsOwnersAndNegatesRewards) {
  const Game g = ThreeOwners();
  const Game d = DualGame(g);
  EXPECT_EQ(d.owner(0), Owner::kPlayer2);
  EXPECT_EQ(d.owner(1), Owner::kPlayer1);
  EXPECT_EQ(d.owner(2), Owner::kRandom);
  EXPECT_DOUBLE_EQ(d.reward(4), -0.8);
}

TEST(GameIoTest, SerializeParseRoundTrip) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::string text = SerializeGame(testing::CorpusGame(seed));
    EXPECT_EQ(SerializeGame(ParseGame(text)), text);
  }
}

TEST(GameIoTest, StrategyJson) {
  const Game g = ThreeOwners();
  const auto f1 = FirstChoiceStrategy(g, Player::kOne);
  const auto doc = StrategyToJson(g, f1);
  EXPECT_EQ(doc["player"], 1);
  EXPECT_EQ(doc["choice"]["v0"], "v1");
  EXPECT_EQ(StrategyFromJson(g, doc), f1);
}

TEST(GameIoTest, MalformedInput) {
  EXPECT_THROW(ParseGame("{"), InputError);
  EXPECT_THROW(ParseGame(R"({"states": [{"name": "a", "owner": "P3", "reward": 0}],
      "edges": [], "initial": "a"})"),
               InputError);
  EXPECT_THROW(ParseGame(R"({"states": [{"name": "a", "owner": "P1", "reward": 0}],
      "edges": [{"from": "a", "to": "b"}], "initial": "a"})"),
               InputError);
}

TEST(GameIoTest, NineSignificantDigits) {
  EXPECT_EQ(FormatValue(2.0), "2.00000000");
  EXPECT_EQ(FormatValue(0.55), "0.550000000");
  EXPECT_EQ(FormatValue(1.0 / 3.0), "0.333333333");
}

TEST(ObjectiveTest, BetaMustBeInsideUnitInterval) {
  EXPECT_THROW(Objective::Discounted(0.0), InputError);
  EXPECT_THROW(Objective::Discounted(1.0), InputError);
  EXPECT_NO_THROW(Objective::Discounted(0.5));
}

}  // namespace
}  // namespace cgplan

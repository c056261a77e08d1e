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

#include <fstream>
#include <set>
#include <sstream>

#include "cgplan/boolplan.hpp"
#include "cgplan/errors.hpp"
#include "cgplan/formula.hpp"
#include "cgplan/sat.hpp"
#include "support/oracles.hpp"

namespace cgplan {
namespace {

constexpr const char* kFlip =
    "props: p\ninit: !p\ngoal: p\naction flip: p' <-> !p\n";

std::string ReadData(const std::string& name) {
  std::ifstream in(std::string(CGPLAN_DATA_DIR) + "/demo/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Evaluates a formula on a pair of concrete states (step 0 and step 1).
bool Holds(const Formula& f, const ConcreteState& now, const ConcreteState& next) {
  return Evaluate(f, [&](VarRef v) { return v.step == 0 ? now[v.prop] : next[v.prop]; });
}

TEST(ParseTest, FlipSystem) {
  const auto sys = ParseBooleanSystem(kFlip);
  EXPECT_EQ(sys.props, (std::vector<std::string>{"p"}));
  ASSERT_EQ(sys.actions.size(), 1u);
  EXPECT_EQ(sys.actions[0].name, "flip");
  EXPECT_TRUE(Holds(sys.actions[0].formula, {false}, {true}));
  EXPECT_FALSE(Holds(sys.actions[0].formula, {false}, {false}));
  EXPECT_NE(sys.FindAction("flip"), nullptr);
  EXPECT_EQ(sys.FindProp("p"), 0u);
}

TEST(ParseTest, PrecedenceAndAssociativity) {
  const auto sys = ParseBooleanSystem(
      "props: a b c\ninit: a | b & c\ngoal: a -> b -> c\naction x: a <-> b <-> c\n");
  auto at = [](bool a, bool b, bool c) { return ConcreteState{a, b, c}; };
  // a | (b & c)
  EXPECT_TRUE(Holds(sys.init, at(false, true, true), {}));
  EXPECT_FALSE(Holds(sys.init, at(false, true, false), {}));
  // a -> (b -> c): false only at a, b, !c.
  EXPECT_FALSE(Holds(sys.goal, at(true, true, false), {}));
  EXPECT_TRUE(Holds(sys.goal, at(false, true, false), {}));
  // (a <-> b) <-> c
  EXPECT_TRUE(Holds(sys.actions[0].formula, at(false, false, true), {}));
  EXPECT_FALSE(Holds(sys.actions[0].formula, at(false, false, false), {}));
}

TEST(ParseTest, FrameSugarExpands) {
  const auto sys = ParseBooleanSystem(ReadData("switches.bp"));
  const Formula& press_a = sys.FindAction("press_a")->formula;
  EXPECT_TRUE(Holds(press_a, {false, false, false}, {true, false, false}));
  EXPECT_FALSE(Holds(press_a, {false, false, false}, {true, true, false}));
  EXPECT_FALSE(Holds(press_a, {false, false, false}, {true, false, true}));
}

TEST(ParseTest, ErrorsCarryPosition) {
  try {
    ParseBooleanSystem("props: p\ninit: !p\ngoal: p'\naction flip: p' <-> !p\n");
    FAIL() << "primed goal accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GT(e.column(), 0u);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_THROW(ParseBooleanSystem("props: p\ninit: q\ngoal: p\naction f: p'\n"), ParseError);
  EXPECT_THROW(ParseBooleanSystem("props: p\ninit: (p\ngoal: p\naction f: p'\n"), ParseError);
  EXPECT_THROW(ParseBooleanSystem("props: p\ninit: p\ngoal: p\naction f: p'\naction f: p'\n"),
               InputError);
  EXPECT_THROW(ParseBooleanSystem("props: p p\ninit: p\ngoal: p\naction f: p'\n"), InputError);
  EXPECT_THROW(ParseBooleanSystem("props: p\ninit: p\ngoal: p\n"), ParseError);
}

TEST(ParseTest, PrintRoundTrip) {
  std::vector<std::string> texts{kFlip, ReadData("switches.bp"), ReadData("flip.bp")};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    texts.push_back(testing::RandomBooleanSystemText(seed, 6, 4));
  }
  for (const auto& text : texts) {
    const auto a = ParseBooleanSystem(text);
    const std::string printed = PrintBooleanSystem(a);
    const auto b = ParseBooleanSystem(printed);
    EXPECT_EQ(a.props, b.props);
    EXPECT_TRUE(StructurallyEqual(a.init, b.init));
    EXPECT_TRUE(StructurallyEqual(a.goal, b.goal));
    ASSERT_EQ(a.actions.size(), b.actions.size());
    for (std::size_t i = 0; i < a.actions.size(); ++i) {
      EXPECT_EQ(a.actions[i].name, b.actions[i].name);
      EXPECT_TRUE(StructurallyEqual(a.actions[i].formula, b.actions[i].formula)) << printed;
    }
    EXPECT_EQ(PrintBooleanSystem(b), printed);
  }
}

TEST(AbstractActionTest, EmptyProjection) {
  const auto sys = ParseBooleanSystem(kFlip);
  EXPECT_EQ(AbstractAction(sys.actions[0].formula, {}), (AbstractRelation{{0}}));
  const Formula never = MakeAnd({MakeVar(0, 1), MakeNot(MakeVar(0, 1))});
  EXPECT_EQ(AbstractAction(never, {}), (AbstractRelation{{}}));
}

TEST(AbstractActionTest, ToggleOverItsProposition) {
  const auto sys = ParseBooleanSystem(kFlip);
  EXPECT_EQ(AbstractAction(sys.actions[0].formula, {0}), (AbstractRelation{{1}, {0}}));
}

TEST(AbstractActionTest, FullProjectionIsConcreteRelation) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto sys = ParseBooleanSystem(testing::RandomBooleanSystemText(seed, 5, 3));
    const std::size_t n = sys.props.size();
    Projection all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    auto decode = [n](std::uint32_t bits) {
      ConcreteState s(n);
      for (std::size_t i = 0; i < n; ++i) s[i] = (bits >> i) & 1u;
      return s;
    };
    for (const auto& a : sys.actions) {
      const auto rel = AbstractAction(a.formula, all);
      for (std::uint32_t s = 0; s < (1u << n); ++s) {
        std::vector<AbstractValuation> expect;
        for (std::uint32_t t = 0; t < (1u << n); ++t) {
          if (Holds(a.formula, decode(s), decode(t))) expect.push_back(t);
        }
        EXPECT_EQ(rel[s], expect) << "seed " << seed;
      }
    }
  }
}

TEST(AbstractActionTest, GuardLimitsProjectionSize) {
  Projection big(kProjectionGuard + 1);
  for (std::size_t i = 0; i < big.size(); ++i) big[i] = i;
  EXPECT_THROW(AbstractAction(MakeTrue(), big), InputError);
  EXPECT_NO_THROW(AbstractAction(MakeVar(0, 1), Projection{0, 1}, 2));
}

TEST(AbstractReachTest, EmptyProjectionCollapses) {
  const auto sys = ParseBooleanSystem(kFlip);
  const auto plan = AbstractReach(sys, {});
  ASSERT_TRUE(plan.has_value());
  EXPECT_TRUE(plan->actions.empty());
  EXPECT_EQ(plan->states, (std::vector<AbstractValuation>{0}));
}

TEST(AbstractReachTest, UnsatisfiableGoalIsUnreachable) {
  const auto sys = ParseBooleanSystem("props: p q\ninit: !p\ngoal: q & !q\naction f: p'\n");
  EXPECT_FALSE(AbstractReach(sys, {}).has_value());
  EXPECT_FALSE(AbstractReach(sys, {0}).has_value());
  EXPECT_FALSE(AbstractReach(sys, {0, 1}).has_value());
  EXPECT_FALSE(BooleanCegarPlan(sys).feasible);
}

TEST(AbstractReachTest, ProjectionIsSound) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto sys = ParseBooleanSystem(testing::RandomBooleanSystemText(seed, 10, 6));
    const auto oracle = testing::ConcreteShortestPlan(sys);
    const std::size_t n = sys.props.size();
    for (std::uint32_t mask = 0; mask < (1u << n); mask += 1 + seed % 37) {
      Projection pi;
      for (std::size_t i = 0; i < n; ++i) {
        if ((mask >> i) & 1u) pi.push_back(i);
      }
      const auto plan = AbstractReach(sys, pi);
      if (!plan) {
        EXPECT_FALSE(oracle.has_value()) << "seed " << seed;
      } else if (oracle) {
        EXPECT_LE(plan->actions.size(), *oracle) << "seed " << seed;
      }
    }
    Projection all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    const auto exact = AbstractReach(sys, all);
    ASSERT_EQ(exact.has_value(), oracle.has_value()) << "seed " << seed;
    if (exact) EXPECT_EQ(exact->actions.size(), *oracle);
  }
}

TEST(BmcTest, EmptyPlanChecksInitAndGoal) {
  const auto sys = ParseBooleanSystem(kFlip);
  EXPECT_FALSE(Solve(ToCnf(BmcFormula(sys, {}))).satisfiable);
  const auto easy = ParseBooleanSystem("props: p\ninit: p\ngoal: p\naction f: p'\n");
  EXPECT_TRUE(Solve(ToCnf(BmcFormula(easy, {}))).satisfiable);
}

TEST(BmcTest, FlipPlanModel) {
  const auto sys = ParseBooleanSystem(kFlip);
  const Cnf cnf = ToCnf(BmcFormula(sys, {"flip"}));
  const auto out = Solve(cnf);
  ASSERT_TRUE(out.satisfiable);
  EXPECT_FALSE(out.model[*cnf.Find({0, 0}) - 1]);
  EXPECT_TRUE(out.model[*cnf.Find({0, 1}) - 1]);
  EXPECT_THROW(BmcFormula(sys, {"jump"}), InputError);
}

TEST(BmcTest, PreconditionCoreMentionsInitialVariable) {
  const auto sys = ParseBooleanSystem(
      "props: p q\ninit: !p & !q\ngoal: q\naction go: p & q' & frame except {q}\n");
  const Cnf cnf = ToCnf(BmcFormula(sys, {"go"}));
  const auto out = Solve(cnf);
  ASSERT_FALSE(out.satisfiable);
  std::set<VarRef> vars;
  for (std::size_t id : MinimizeCore(cnf, out.core)) {
    for (Literal l : cnf.clauses[id]) {
      const auto& var = cnf.variables[std::abs(l) - 1];
      if (!var.auxiliary) vars.insert(var.origin);
    }
  }
  EXPECT_TRUE(vars.count(VarRef{0, 0}));
}

TEST(CegarPlanTest, FlipIsFeasibleQuickly) {
  const auto res = BooleanCegarPlan(ParseBooleanSystem(ReadData("flip.bp")));
  ASSERT_TRUE(res.feasible);
  EXPECT_EQ(res.plan, (std::vector<std::string>{"flip"}));
  EXPECT_LE(res.iterations.size(), 2u);
  EXPECT_EQ(res.trace, (std::vector<ConcreteState>{{false}, {true}}));
}

TEST(CegarPlanTest, SwitchesNeedRefinement) {
  const auto sys = ParseBooleanSystem(ReadData("switches.bp"));
  const auto res = BooleanCegarPlan(sys);
  ASSERT_TRUE(res.feasible);
  EXPECT_EQ(res.plan, (std::vector<std::string>{"press_a", "press_b", "light"}));
  EXPECT_GT(res.iterations.size(), 1u);
  EXPECT_TRUE(TraceExecutes(sys, res.plan, res.trace));
}

TEST(CegarPlanTest, MatchesConcreteSearch) {
  std::size_t feasible = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto sys = ParseBooleanSystem(testing::RandomBooleanSystemText(seed, 10, 6));
    const auto oracle = testing::ConcreteShortestPlan(sys);
    const auto res = BooleanCegarPlan(sys);
    ASSERT_EQ(res.feasible, oracle.has_value()) << "seed " << seed;
    EXPECT_LE(res.iterations.size(), sys.props.size() + 1);
    for (std::size_t i = 1; i < res.iterations.size(); ++i) {
      EXPECT_GT(res.iterations[i].pi.size(), res.iterations[i - 1].pi.size());
    }
    if (!res.feasible) continue;
    ++feasible;
    ASSERT_EQ(res.trace.size(), res.plan.size() + 1);
    EXPECT_TRUE(Holds(sys.init, res.trace.front(), {}));
    EXPECT_TRUE(Holds(sys.goal, res.trace.back(), {}));
    for (std::size_t i = 0; i < res.plan.size(); ++i) {
      EXPECT_TRUE(Holds(sys.FindAction(res.plan[i])->formula, res.trace[i], res.trace[i + 1]));
    }
  }
  EXPECT_GT(feasible, 10u);
  EXPECT_LT(feasible, 90u);
}

TEST(CegarPlanTest, CoresAlwaysAddFreshPropositions) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto sys = ParseBooleanSystem(testing::RandomBooleanSystemText(seed, 10, 6));
    for (const auto& it : BooleanCegarPlan(sys).iterations) {
      if (!it.abstract_plan || it.bmc_satisfiable) continue;
      EXPECT_FALSE(it.added.empty());
      for (std::size_t p : it.added) {
        EXPECT_FALSE(std::binary_search(it.pi.begin(), it.pi.end(), p));
      }
    }
  }
}

}  // namespace
}  // namespace cgplan

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

#include "cgplan/cegar.hpp"

#include <algorithm>
#include <numeric>

#include "cgplan/errors.hpp"

namespace cgplan {

using nlohmann::json;

namespace {

bool Proper(const std::vector<StateId>& subset, std::size_t block_size) {
  return !subset.empty() && subset.size() < block_size;
}

}  // namespace

std::string_view SplitOperatorName(SplitOperator op) {
  switch (op) {
    case SplitOperator::kFocusP2: return "FOCUS_P2";
    case SplitOperator::kFocusP1: return "FOCUS_P1";
    case SplitOperator::kValueFocus: return "VALUE_FOCUS";
    case SplitOperator::kSignature: return "SIGNATURE";
  }
  return "?";
}

std::vector<StateId> FocusP2(const Game& concrete,
                             const Abstraction& abstraction, std::size_t block,
                             const MemorylessStrategy& f2_abstract) {
  CGPLAN_CHECK(abstraction.game.owner(block) == Owner::kPlayer2,
               "FocusP2 on a block not owned by player 2");
  const std::size_t target = f2_abstract(block);
  std::vector<StateId> out;
  for (StateId v : abstraction.Concretize(block)) {
    for (const Edge& e : concrete.successors(v)) {
      if (abstraction.partition.block_of[e.to] == target) {
        out.push_back(v);
        break;
      }
    }
  }
  // The abstract edge exists only if some member has a concrete one.
  CGPLAN_CHECK(!out.empty(), "abstract spoiler uses an edge no member has");
  return out;
}

std::vector<StateId> FocusP1(const Game& concrete,
                             const Abstraction& abstraction, std::size_t block,
                             const ValueFunction& val1_abstract,
                             double margin) {
  const double own = val1_abstract[block];
  std::vector<StateId> out;
  for (StateId u : abstraction.Concretize(block)) {
    for (const Edge& e : concrete.successors(u)) {
      if (val1_abstract[abstraction.partition.block_of[e.to]] > own + margin) {
        out.push_back(u);
        break;
      }
    }
  }
  return out;
}

std::vector<StateId> ValueFocus(const Game& concrete,
                                const Abstraction& abstraction,
                                std::size_t block) {
  const double floor = abstraction.game.reward(block);
  std::vector<StateId> out;
  for (StateId v : abstraction.Concretize(block)) {
    if (concrete.reward(v) == floor) out.push_back(v);
  }
  return out;
}

std::vector<StateId> SignatureFocus(const Game& concrete,
                                    const Abstraction& abstraction,
                                    std::size_t block,
                                    const ValueFunction& val1_abstract) {
  const auto& members = abstraction.Concretize(block);
  const auto& block_of = abstraction.partition.block_of;
  std::vector<std::size_t> seen(abstraction.partition.size(), 0);
  for (StateId v : members) {
    std::vector<std::size_t> targets;
    for (const Edge& e : concrete.successors(v)) targets.push_back(block_of[e.to]);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (std::size_t w : targets) ++seen[w];
  }
  std::vector<std::size_t> order(seen.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return val1_abstract[a] > val1_abstract[b];
  });
  for (std::size_t w : order) {
    if (seen[w] == 0 || seen[w] == members.size()) continue;
    std::vector<StateId> out;
    for (StateId v : members) {
      for (const Edge& e : concrete.successors(v)) {
        if (block_of[e.to] == w) {
          out.push_back(v);
          break;
        }
      }
    }
    return out;
  }
  return {};
}

RefinementOutcome CegarStep(const Game& concrete,
                            const Abstraction& abstraction,
                            const MemorylessStrategy& f2_abstract,
                            const ValueFunction& val1_abstract) {
  const Game& ag = abstraction.game;
  auto split = [&](std::size_t block, SplitOperator op,
                   std::vector<StateId> subset) -> RefinementOutcome {
    Spurious s;
    s.refined = BuildAbstraction(
        concrete, Split(abstraction.partition, block, subset));
    s.split_block = block;
    s.op = op;
    s.subset = std::move(subset);
    return s;
  };

  for (std::size_t b = 0; b < ag.num_states(); ++b) {
    const std::size_t size = abstraction.Concretize(b).size();
    if (size < 2) continue;
    if (ag.owner(b) == Owner::kPlayer2) {
      auto subset = FocusP2(concrete, abstraction, b, f2_abstract);
      if (Proper(subset, size)) return split(b, SplitOperator::kFocusP2, subset);
    }
    if (ag.owner(b) == Owner::kPlayer1) {
      auto subset = FocusP1(concrete, abstraction, b, val1_abstract);
      if (Proper(subset, size)) return split(b, SplitOperator::kFocusP1, subset);
    }
    auto subset = ValueFocus(concrete, abstraction, b);
    if (Proper(subset, size)) return split(b, SplitOperator::kValueFocus, subset);
  }
  for (std::size_t b = 0; b < ag.num_states(); ++b) {
    const std::size_t size = abstraction.Concretize(b).size();
    if (size < 2 || ag.owner(b) != Owner::kPlayer1) continue;
    auto subset = SignatureFocus(concrete, abstraction, b, val1_abstract);
    if (Proper(subset, size)) return split(b, SplitOperator::kSignature, subset);
  }
  return Genuine{};
}

PlanOutcome CounterexampleGuidedPlan(const Game& game,
                                     const Objective& objective, double p,
                                     const PlanOptions& options) {
  RequireValid(game);
  PlanOutcome out;
  Abstraction abstraction = BuildAbstraction(game, InitialAbstraction(game));
  out.initial_blocks = abstraction.partition.size();
  const std::size_t bound =
      options.max_iterations ? options.max_iterations
                             : game.num_states() - out.initial_blocks + 1;

  for (std::size_t iter = 1;; ++iter) {
    if (iter > bound) {
      throw InternalError("refinement loop exceeded " + std::to_string(bound) +
                          " iterations");
    }
    SolveResult solved = GameSolve(abstraction.game, objective, p, options.solver);
    IterationRecord record;
    record.iter = iter;
    record.abstract_states = abstraction.game.num_states();
    record.winner = solved.winner;
    record.abstract_val1_v0 = solved.val1[abstraction.game.initial()];

    if (solved.winner == Player::kOne) {
      out.trace.push_back(std::move(record));
      FeasiblePlan plan;
      plan.plan = ConcretizePlan(game, abstraction, solved.opt1);
      plan.abstract_plan = std::move(solved.opt1);
      out.verdict = std::move(plan);
      out.final_abstraction = std::move(abstraction);
      return out;
    }

    RefinementOutcome step =
        CegarStep(game, abstraction, solved.opt2, solved.val1);
    if (std::holds_alternative<Genuine>(step)) {
      out.trace.push_back(std::move(record));
      InfeasiblePlan verdict;
      verdict.concrete_spoiler = ConcretizeSpoiler(game, abstraction, solved.opt2);
      verdict.spoiler = std::move(solved.opt2);
      out.verdict = std::move(verdict);
      out.final_abstraction = std::move(abstraction);
      return out;
    }
    auto& spurious = std::get<Spurious>(step);
    record.split_operator = spurious.op;
    record.split_block = spurious.split_block;
    record.split_members = abstraction.Concretize(spurious.split_block);
    record.repair_splits = spurious.refined.repair_splits;
    CGPLAN_CHECK(spurious.refined.partition.size() > abstraction.partition.size(),
                 "refinement did not add a block");
    out.trace.push_back(std::move(record));
    abstraction = std::move(spurious.refined);
  }
}

Certificate CertifyOutcome(const Game& game, const Objective& objective,
                           double p, const PlanOutcome& outcome) {
  Certificate c;
  if (const auto* f = std::get_if<FeasiblePlan>(&outcome.verdict)) {
    MdpResult response = MdpSolve(Restrict(game, f->plan), objective,
                                  Player::kTwo, Sense::kMin);
    c.value = response.values[game.initial()];
    c.holds = c.value >= p - kCertificateTolerance;
  } else {
    const auto& inf = std::get<InfeasiblePlan>(outcome.verdict);
    MdpResult response = MdpSolve(Restrict(game, inf.concrete_spoiler),
                                  objective, Player::kOne, Sense::kMax);
    c.value = response.values[game.initial()];
    c.holds = c.value < p + kCertificateTolerance;
  }
  return c;
}

json TraceRecordToJson(const Game& concrete, const IterationRecord& record) {
  json members = json::array();
  for (StateId v : record.split_members) members.push_back(concrete.name(v));
  json doc{{"iter", record.iter},
           {"abstract_states", record.abstract_states},
           {"winner", static_cast<int>(record.winner)},
           {"split_operator",
            record.split_operator
                ? json(std::string(SplitOperatorName(*record.split_operator)))
                : json(nullptr)},
           {"split_block_members", std::move(members)},
           {"abstract_val1_v0", record.abstract_val1_v0}};
  if (record.repair_splits) doc["repair_splits"] = record.repair_splits;
  return doc;
}

}  // namespace cgplan

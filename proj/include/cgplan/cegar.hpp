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

#ifndef CGPLAN_CEGAR_HPP_
#define CGPLAN_CEGAR_HPP_

#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "cgplan/abstraction.hpp"
#include "cgplan/game.hpp"
#include "cgplan/solver.hpp"
#include "json.hpp"

namespace cgplan {

// Strict-improvement margin for FocusP1: equal floating-point values must not
// produce splits.
inline constexpr double kFocusMargin = 1e-9;
// Slack used when certifying a plan outcome against exact best responses.
inline constexpr double kCertificateTolerance = 1e-6;

enum class SplitOperator : std::uint8_t {
  kFocusP2,
  kFocusP1,
  kValueFocus,
  // Last-resort edge refinement of a player-1 block whose members disagree on
  // their sets of successor blocks. Only tried when the three operators
  // above find nothing anywhere.
  kSignature,
};
std::string_view SplitOperatorName(SplitOperator op);

// Members of a player-2 block that have an edge into the block the abstract
// spoiler picks there.
std::vector<StateId> FocusP2(const Game& concrete,
                             const Abstraction& abstraction, std::size_t block,
                             const MemorylessStrategy& f2_abstract);

// Members of a player-1 block with an edge into some block whose abstract value
// exceeds the block's own by more than `margin`.
std::vector<StateId> FocusP1(const Game& concrete,
                             const Abstraction& abstraction, std::size_t block,
                             const ValueFunction& val1_abstract,
                             double margin = kFocusMargin);

// Members whose reward equals the block reward (the block minimum).
std::vector<StateId> ValueFocus(const Game& concrete,
                                const Abstraction& abstraction,
                                std::size_t block);

// Members of a player-1 block with an edge into the most valuable target block
// on which the members disagree; empty when all members see the same blocks.
std::vector<StateId> SignatureFocus(const Game& concrete,
                                    const Abstraction& abstraction,
                                    std::size_t block,
                                    const ValueFunction& val1_abstract);

struct Spurious {
  Abstraction refined;
  std::size_t split_block = 0;
  SplitOperator op = SplitOperator::kFocusP2;
  std::vector<StateId> subset;
};
struct Genuine {};
using RefinementOutcome = std::variant<Spurious, Genuine>;

// One counterexample analysis. Blocks are scanned in index order; at each
// block FocusP2 (player-2 blocks), FocusP1 (player-1 blocks) and ValueFocus
// are tried in turn, and the first proper nonempty subset is split off. If
// nothing splits, SignatureFocus is tried on every player-1 block. Genuine
// means no operator applies anywhere.
RefinementOutcome CegarStep(const Game& concrete,
                            const Abstraction& abstraction,
                            const MemorylessStrategy& f2_abstract,
                            const ValueFunction& val1_abstract);

struct IterationRecord {
  std::size_t iter = 0;
  std::size_t abstract_states = 0;
  Player winner = Player::kOne;
  double abstract_val1_v0 = 0.0;
  // Set on spurious iterations.
  std::optional<SplitOperator> split_operator;
  std::size_t split_block = 0;
  std::vector<StateId> split_members;
  std::size_t repair_splits = 0;
};

struct FeasiblePlan {
  MemorylessStrategy plan;           // concrete, player 1
  MemorylessStrategy abstract_plan;  // on the final abstraction
};
struct InfeasiblePlan {
  MemorylessStrategy spoiler;           // abstract, player 2
  MemorylessStrategy concrete_spoiler;  // concrete, player 2
};

struct PlanOutcome {
  std::variant<FeasiblePlan, InfeasiblePlan> verdict;
  std::vector<IterationRecord> trace;
  Abstraction final_abstraction;
  std::size_t initial_blocks = 0;

  bool feasible() const {
    return std::holds_alternative<FeasiblePlan>(verdict);
  }
  std::size_t refinements() const { return trace.empty() ? 0 : trace.size() - 1; }
};

struct PlanOptions {
  SolverOptions solver;
  // 0 selects the termination bound |V| - (initial blocks) + 1.
  std::size_t max_iterations = 0;
};

// Abstract, solve, analyse the counterexample, refine; repeat.
PlanOutcome CounterexampleGuidedPlan(const Game& game,
                                     const Objective& objective, double p,
                                     const PlanOptions& options = {});

struct Certificate {
  // Value at v0 when the returned strategy is fixed and the other player
  // best-responds exactly.
  double value = 0.0;
  bool holds = false;
};
Certificate CertifyOutcome(const Game& game, const Objective& objective,
                           double p, const PlanOutcome& outcome);

nlohmann::json TraceRecordToJson(const Game& concrete,
                                 const IterationRecord& record);

}  // namespace cgplan

#endif  // CGPLAN_CEGAR_HPP_

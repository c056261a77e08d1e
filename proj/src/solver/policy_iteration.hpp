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

#ifndef CGPLAN_SOLVER_POLICY_ITERATION_HPP_
#define CGPLAN_SOLVER_POLICY_ITERATION_HPP_

#include <vector>

#include "cgplan/game.hpp"
#include "cgplan/solver.hpp"

namespace cgplan::detail {

// Switches happen only when they beat the current choice by this much.
double ImprovementTolerance(const ValueFunction& values);

// Successors of every state in increasing index order.
std::vector<std::vector<StateId>> SortedSuccessors(const Game& game);

struct PolicyIterationResult {
  std::vector<StateId> successor;  // full table, controller choices included
  ValueFunction values;
  ValueFunction bias;
  std::size_t improvements = 0;
  std::vector<ValueFunction> history;
};

// Policy iteration over the states owned by `controller`, every other
// non-random state keeping its entry of `successor`. Discounted: greedy
// improvement on exact values. Average: multichain gain-then-bias policy
// iteration.
PolicyIterationResult PolicyIteration(const Game& game,
                                      const Objective& objective,
                                      Owner controller, Sense sense,
                                      std::vector<StateId> successor,
                                      const SolverOptions& options,
                                      bool record_history = false);

}  // namespace cgplan::detail

#endif  // CGPLAN_SOLVER_POLICY_ITERATION_HPP_

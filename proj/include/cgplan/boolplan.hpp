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

#ifndef CGPLAN_BOOLPLAN_HPP_
#define CGPLAN_BOOLPLAN_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cgplan/errors.hpp"
#include "cgplan/formula.hpp"
#include "cgplan/sat.hpp"

namespace cgplan {

// Largest projection the explicit abstract enumeration accepts.
inline constexpr std::size_t kProjectionGuard = 12;

struct BoolAction {
  std::string name;
  Formula formula;  // over P (step 0) and P' (step 1)
};

struct BooleanSystem {
  std::vector<std::string> props;
  Formula init;  // over P
  Formula goal;  // over P
  std::vector<BoolAction> actions;

  std::optional<std::size_t> FindProp(const std::string& name) const;
  const BoolAction* FindAction(const std::string& name) const;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

BooleanSystem ParseBooleanSystem(const std::string& text);
std::string PrintBooleanSystem(const BooleanSystem& system);
// Throws InputError on unknown propositions, primes outside actions, or
// duplicate action names.
void RequireValidSystem(const BooleanSystem& system);

// A projection is a sorted set of proposition indices. Abstract state bit i is
// the value of projection[i].
using Projection = std::vector<std::size_t>;
using AbstractValuation = std::uint32_t;

// Successor lists of the abstract action, indexed by abstract state, each
// sorted ascending.
using AbstractRelation = std::vector<std::vector<AbstractValuation>>;

AbstractRelation AbstractAction(const Formula& action, const Projection& pi,
                                std::size_t guard = kProjectionGuard);

// Abstract states s with formula ∧ bindings(s) satisfiable, ascending.
std::vector<AbstractValuation> AbstractStates(const Formula& state_formula,
                                              const Projection& pi,
                                              std::size_t guard = kProjectionGuard);

struct AbstractPlan {
  std::vector<std::string> actions;
  std::vector<AbstractValuation> states;  // actions.size() + 1 entries
};

// Breadth-first search over S(pi); actions expand in list order, successors
// in numeric order. nullopt means unreachable.
std::optional<AbstractPlan> AbstractReach(const BooleanSystem& system,
                                          const Projection& pi,
                                          std::size_t guard = kProjectionGuard);

// init(x_0) ∧ a_1(x_0, x_1) ∧ ... ∧ a_n(x_{n-1}, x_n) ∧ goal(x_n), with
// variables (prop, time).
Formula BmcFormula(const BooleanSystem& system,
                   const std::vector<std::string>& plan);

using ConcreteState = std::vector<bool>;

struct BoolPlanIteration {
  Projection pi;
  std::optional<AbstractPlan> abstract_plan;
  bool bmc_satisfiable = false;
  std::size_t core_clauses = 0;
  std::vector<std::size_t> added;  // propositions added to pi
};

struct BoolPlanResult {
  bool feasible = false;
  std::vector<std::string> plan;
  std::vector<ConcreteState> trace;  // plan.size() + 1 states
  std::vector<BoolPlanIteration> iterations;
};

BoolPlanResult BooleanCegarPlan(const BooleanSystem& system,
                                std::size_t guard = kProjectionGuard);

// Checks init, every step and goal of a concrete trace by direct evaluation.
bool TraceExecutes(const BooleanSystem& system,
                   const std::vector<std::string>& plan,
                   const std::vector<ConcreteState>& trace);

}  // namespace cgplan

#endif  // CGPLAN_BOOLPLAN_HPP_

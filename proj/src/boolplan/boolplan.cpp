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

#include <algorithm>
#include <deque>
#include <set>

#include "cgplan/boolplan.hpp"

namespace cgplan {

namespace {

void CheckGuard(const Projection& pi, std::size_t guard) {
  if (pi.size() > guard) {
    throw InputError("projection of " + std::to_string(pi.size()) +
                     " propositions exceeds the enumeration guard of " +
                     std::to_string(guard));
  }
}

// Every valuation of `vars` (bit i = vars[i]) extendable to a model of
// `formula`, ascending. Each model found is blocked on the projected
// variables; variables absent from the formula are unconstrained.
std::vector<std::uint64_t> ProjectModels(const Formula& formula,
                                         const std::vector<VarRef>& vars) {
  Cnf cnf = ToCnf(formula);
  std::vector<std::optional<int>> lit(vars.size());
  std::uint64_t free_mask = 0;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    lit[i] = cnf.Find(vars[i]);
    if (!lit[i]) free_mask |= std::uint64_t{1} << i;
  }
  std::set<std::uint64_t> found;
  while (true) {
    SatOutcome out = Solve(cnf);
    if (!out.satisfiable) break;
    std::uint64_t bits = 0;
    Clause block;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (!lit[i]) continue;
      const bool v = out.model[*lit[i] - 1];
      if (v) bits |= std::uint64_t{1} << i;
      block.push_back(v ? -*lit[i] : *lit[i]);
    }
    // Enumerate all completions over the free bits.
    std::uint64_t sub = free_mask;
    while (true) {
      found.insert(bits | sub);
      if (sub == 0) break;
      sub = (sub - 1) & free_mask;
    }
    if (block.empty()) break;
    cnf.clauses.push_back(std::move(block));
    cnf.clause_group.push_back(cnf.num_groups);
  }
  return {found.begin(), found.end()};
}

}  // namespace

std::optional<std::size_t> BooleanSystem::FindProp(const std::string& name) const {
  auto it = std::find(props.begin(), props.end(), name);
  if (it == props.end()) return std::nullopt;
  return static_cast<std::size_t>(it - props.begin());
}

const BoolAction* BooleanSystem::FindAction(const std::string& name) const {
  for (const auto& a : actions) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

void RequireValidSystem(const BooleanSystem& system) {
  auto check = [&](const Formula& f, std::size_t max_step, const std::string& where) {
    for (VarRef v : CollectVars(f)) {
      if (v.prop >= system.props.size()) {
        throw InputError(where + " references an unknown proposition");
      }
      if (v.step > max_step) {
        throw InputError(where + " uses a primed variable");
      }
    }
  };
  check(system.init, 0, "init");
  check(system.goal, 0, "goal");
  std::set<std::string> names;
  for (const auto& a : system.actions) {
    if (!names.insert(a.name).second) {
      throw InputError("duplicate action '" + a.name + "'");
    }
    check(a.formula, 1, "action '" + a.name + "'");
  }
}

AbstractRelation AbstractAction(const Formula& action, const Projection& pi,
                                std::size_t guard) {
  CheckGuard(pi, guard);
  const std::size_t k = pi.size();
  std::vector<VarRef> vars;
  for (std::size_t p : pi) vars.push_back({p, 0});
  for (std::size_t p : pi) vars.push_back({p, 1});
  AbstractRelation rel(std::size_t{1} << k);
  const std::uint64_t low = (std::uint64_t{1} << k) - 1;
  for (std::uint64_t pair : ProjectModels(action, vars)) {
    rel[pair & low].push_back(static_cast<AbstractValuation>(pair >> k));
  }
  for (auto& succ : rel) std::sort(succ.begin(), succ.end());
  return rel;
}

std::vector<AbstractValuation> AbstractStates(const Formula& state_formula,
                                              const Projection& pi,
                                              std::size_t guard) {
  CheckGuard(pi, guard);
  std::vector<VarRef> vars;
  for (std::size_t p : pi) vars.push_back({p, 0});
  std::vector<AbstractValuation> out;
  for (std::uint64_t s : ProjectModels(state_formula, vars)) {
    out.push_back(static_cast<AbstractValuation>(s));
  }
  return out;
}

std::optional<AbstractPlan> AbstractReach(const BooleanSystem& system,
                                          const Projection& pi,
                                          std::size_t guard) {
  CheckGuard(pi, guard);
  const std::size_t n = std::size_t{1} << pi.size();
  std::vector<bool> goal(n, false);
  for (AbstractValuation s : AbstractStates(system.goal, pi, guard)) goal[s] = true;
  std::vector<AbstractRelation> rel;
  for (const auto& a : system.actions) rel.push_back(AbstractAction(a.formula, pi, guard));

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(n, kNone), via(n, kNone);
  std::vector<bool> seen(n, false);
  auto unwind = [&](AbstractValuation s) {
    AbstractPlan plan;
    plan.states.push_back(s);
    while (parent[s] != kNone) {
      plan.actions.push_back(system.actions[via[s]].name);
      s = static_cast<AbstractValuation>(parent[s]);
      plan.states.push_back(s);
    }
    std::reverse(plan.actions.begin(), plan.actions.end());
    std::reverse(plan.states.begin(), plan.states.end());
    return plan;
  };

  std::deque<AbstractValuation> queue;
  for (AbstractValuation s : AbstractStates(system.init, pi, guard)) {
    if (goal[s]) return unwind(s);
    seen[s] = true;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const AbstractValuation s = queue.front();
    queue.pop_front();
    for (std::size_t a = 0; a < rel.size(); ++a) {
      for (AbstractValuation t : rel[a][s]) {
        if (seen[t]) continue;
        seen[t] = true;
        parent[t] = s;
        via[t] = a;
        if (goal[t]) return unwind(t);
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

Formula BmcFormula(const BooleanSystem& system,
                   const std::vector<std::string>& plan) {
  const std::size_t n = plan.size();
  std::vector<Formula> parts;
  parts.push_back(system.init);
  for (std::size_t i = 0; i < n; ++i) {
    const BoolAction* a = system.FindAction(plan[i]);
    if (!a) throw InputError("unknown action '" + plan[i] + "'");
    parts.push_back(RenameVars(a->formula, [i](VarRef v) {
      return VarRef{v.prop, i + v.step};
    }));
  }
  parts.push_back(RenameVars(system.goal, [n](VarRef v) {
    return VarRef{v.prop, n};
  }));
  return MakeAnd(std::move(parts));
}

bool TraceExecutes(const BooleanSystem& system,
                   const std::vector<std::string>& plan,
                   const std::vector<ConcreteState>& trace) {
  if (trace.size() != plan.size() + 1) return false;
  auto at = [&](std::size_t t) {
    return [&trace, t](VarRef v) { return static_cast<bool>(trace[t + v.step][v.prop]); };
  };
  if (!Evaluate(system.init, at(0))) return false;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const BoolAction* a = system.FindAction(plan[i]);
    if (!a || !Evaluate(a->formula, at(i))) return false;
  }
  return Evaluate(system.goal, at(plan.size()));
}

BoolPlanResult BooleanCegarPlan(const BooleanSystem& system,
                                std::size_t guard) {
  RequireValidSystem(system);
  BoolPlanResult result;
  Projection pi;
  while (true) {
    BoolPlanIteration it;
    it.pi = pi;
    it.abstract_plan = AbstractReach(system, pi, guard);
    if (!it.abstract_plan) {
      result.iterations.push_back(std::move(it));
      return result;
    }
    const auto& plan = it.abstract_plan->actions;
    const Cnf cnf = ToCnf(BmcFormula(system, plan));
    SatOutcome out = Solve(cnf);
    if (out.satisfiable) {
      it.bmc_satisfiable = true;
      std::vector<ConcreteState> trace(plan.size() + 1,
                                       ConcreteState(system.props.size(), false));
      for (std::size_t v = 0; v < cnf.num_vars(); ++v) {
        const CnfVariable& var = cnf.variables[v];
        if (!var.auxiliary) trace[var.origin.step][var.origin.prop] = out.model[v];
      }
      CGPLAN_CHECK(TraceExecutes(system, plan, trace),
                   "decoded plan trace does not execute");
      result.feasible = true;
      result.plan = plan;
      result.trace = std::move(trace);
      result.iterations.push_back(std::move(it));
      return result;
    }
    const auto core = MinimizeCore(cnf, std::move(out.core));
    it.core_clauses = core.size();
    std::set<std::size_t> props(pi.begin(), pi.end());
    for (std::size_t c : core) {
      for (Literal l : cnf.clauses[c]) {
        const CnfVariable& var = cnf.variables[std::abs(l) - 1];
        if (!var.auxiliary && props.insert(var.origin.prop).second) {
          it.added.push_back(var.origin.prop);
        }
      }
    }
    std::sort(it.added.begin(), it.added.end());
    // An abstractly feasible plan cannot have a core over projected
    // variables only.
    CGPLAN_CHECK(!it.added.empty(), "unsat core contains no fresh proposition");
    pi.assign(props.begin(), props.end());
    result.iterations.push_back(std::move(it));
    CheckGuard(pi, guard);
  }
}

}  // namespace cgplan

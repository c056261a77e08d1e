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

#include <cstdint>
#include <cstdlib>
#include <numeric>

#include "cgplan/errors.hpp"
#include "cgplan/sat.hpp"

namespace cgplan {

namespace {

class Dpll {
 public:
  Dpll(std::size_t num_vars, std::vector<const Clause*> clauses)
      : clauses_(std::move(clauses)),
        value_(num_vars + 1, kUnset),
        occurs_(2 * (num_vars + 1)) {
    for (std::size_t c = 0; c < clauses_.size(); ++c) {
      for (Literal l : *clauses_[c]) occurs_[Index(l)].push_back(c);
    }
  }

  bool Run() {
    for (const Clause* c : clauses_) {
      if (c->empty()) return false;
      if (c->size() == 1 && !Assign((*c)[0])) return false;
    }
    if (!Propagate()) return false;

    struct Decision {
      std::size_t trail_size;
      int var;
      bool flipped;
    };
    std::vector<Decision> decisions;
    int next = 1;
    while (true) {
      while (next < static_cast<int>(value_.size()) && value_[next] != kUnset) {
        ++next;
      }
      if (next == static_cast<int>(value_.size())) return true;
      decisions.push_back({trail_.size(), next, false});
      Assign(-next);
      while (!Propagate()) {
        while (!decisions.empty() && decisions.back().flipped) {
          Undo(decisions.back().trail_size);
          decisions.pop_back();
        }
        if (decisions.empty()) return false;
        Decision& d = decisions.back();
        Undo(d.trail_size);
        // Every variable below d.var was assigned when d was taken.
        next = d.var;
        d.flipped = true;
        Assign(d.var);
      }
    }
  }

  std::vector<bool> Model() const {
    std::vector<bool> model(value_.size() - 1);
    for (std::size_t v = 1; v < value_.size(); ++v) model[v - 1] = value_[v] == 1;
    return model;
  }

 private:
  static constexpr std::int8_t kUnset = -1;

  static std::size_t Index(Literal l) {
    return 2 * static_cast<std::size_t>(std::abs(l)) + (l < 0 ? 1 : 0);
  }

  // 1 true, 0 false, -1 unassigned.
  int LiteralValue(Literal l) const {
    const std::int8_t v = value_[std::abs(l)];
    if (v == kUnset) return -1;
    return (v == 1) == (l > 0) ? 1 : 0;
  }

  bool Assign(Literal l) {
    const int current = LiteralValue(l);
    if (current != -1) return current == 1;
    value_[std::abs(l)] = l > 0 ? 1 : 0;
    trail_.push_back(l);
    return true;
  }

  void Undo(std::size_t size) {
    while (trail_.size() > size) {
      value_[std::abs(trail_.back())] = kUnset;
      trail_.pop_back();
    }
    head_ = std::min(head_, size);
  }

  bool Propagate() {
    while (head_ < trail_.size()) {
      const Literal falsified = -trail_[head_++];
      for (std::size_t c : occurs_[Index(falsified)]) {
        Literal unit = 0;
        int open = 0;
        bool satisfied = false;
        for (Literal l : *clauses_[c]) {
          const int v = LiteralValue(l);
          if (v == 1) {
            satisfied = true;
            break;
          }
          if (v == -1 && unit != l) {
            unit = l;
            ++open;
          }
        }
        if (satisfied) continue;
        if (open == 0) return false;
        if (open == 1) Assign(unit);
      }
    }
    return true;
  }

  std::vector<const Clause*> clauses_;
  std::vector<std::int8_t> value_;
  std::vector<std::vector<std::size_t>> occurs_;
  std::vector<Literal> trail_;
  std::size_t head_ = 0;
};

SatOutcome Run(std::size_t num_vars, std::vector<const Clause*> clauses,
               std::vector<std::size_t> ids) {
  for (const Clause* c : clauses) {
    for (Literal l : *c) {
      CGPLAN_CHECK(l != 0 && static_cast<std::size_t>(std::abs(l)) <= num_vars,
                   "literal references an undeclared variable");
    }
  }
  Dpll dpll(num_vars, std::move(clauses));
  SatOutcome out;
  out.satisfiable = dpll.Run();
  if (out.satisfiable) {
    out.model = dpll.Model();
  } else {
    out.core = std::move(ids);
  }
  return out;
}

}  // namespace

SatOutcome SolveSubset(const Cnf& cnf, const std::vector<std::size_t>& ids) {
  std::vector<const Clause*> clauses;
  clauses.reserve(ids.size());
  for (std::size_t id : ids) {
    CGPLAN_CHECK(id < cnf.clauses.size(), "clause id out of range");
    clauses.push_back(&cnf.clauses[id]);
  }
  return Run(cnf.num_vars(), std::move(clauses), ids);
}

SatOutcome Solve(const Cnf& cnf) {
  std::vector<std::size_t> ids(cnf.clauses.size());
  std::iota(ids.begin(), ids.end(), 0);
  return SolveSubset(cnf, ids);
}

SatOutcome SolveUnder(const Cnf& cnf, const std::vector<Literal>& units) {
  std::vector<Clause> extra;
  extra.reserve(units.size());
  for (Literal l : units) extra.push_back({l});
  std::vector<const Clause*> clauses;
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < cnf.clauses.size(); ++i) {
    clauses.push_back(&cnf.clauses[i]);
    ids.push_back(i);
  }
  for (const Clause& c : extra) clauses.push_back(&c);
  SatOutcome out = Run(cnf.num_vars(), std::move(clauses), std::move(ids));
  return out;
}

std::vector<std::size_t> MinimizeCore(const Cnf& cnf,
                                      std::vector<std::size_t> core) {
  if (SolveSubset(cnf, core).satisfiable) {
    throw InputError("core to minimize is satisfiable");
  }
  for (std::size_t i = 0; i < core.size();) {
    std::vector<std::size_t> rest;
    rest.reserve(core.size() - 1);
    for (std::size_t j = 0; j < core.size(); ++j) {
      if (j != i) rest.push_back(core[j]);
    }
    if (!SolveSubset(cnf, rest).satisfiable) {
      core = std::move(rest);
    } else {
      ++i;
    }
  }
  return core;
}

bool SatisfiesClauses(const Cnf& cnf, const std::vector<bool>& model) {
  for (const Clause& c : cnf.clauses) {
    bool sat = false;
    for (Literal l : c) {
      if (model[std::abs(l) - 1] == (l > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

}  // namespace cgplan

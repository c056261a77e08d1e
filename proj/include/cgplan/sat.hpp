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

#ifndef CGPLAN_SAT_HPP_
#define CGPLAN_SAT_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cgplan/formula.hpp"

namespace cgplan {

// DIMACS-style literal: +v or -v for 1-based variable v.
using Literal = int;
using Clause = std::vector<Literal>;

struct CnfVariable {
  // Original variables carry the formula variable they stand for; auxiliary
  // (Tseitin) variables carry the clause group that introduced them.
  bool auxiliary = false;
  VarRef origin;
  std::size_t group = 0;
};

struct Cnf {
  std::vector<CnfVariable> variables;  // variable v is variables[v - 1]
  std::vector<Clause> clauses;
  // Group of each clause: the index of the top-level conjunct it encodes.
  std::vector<std::size_t> clause_group;
  std::size_t num_groups = 0;

  std::size_t num_vars() const { return variables.size(); }
  // Variable for an original formula variable, if it occurs.
  std::optional<int> Find(VarRef v) const;
};

// Structural (Tseitin) transformation. Nested top-level conjunctions are
// flattened; each conjunct becomes its own group, with its own auxiliary
// variables. Original variables are shared across groups.
Cnf ToCnf(const Formula& formula);

struct SatOutcome {
  bool satisfiable = false;
  std::vector<bool> model;        // indexed by variable - 1; SAT only
  std::vector<std::size_t> core;  // clause ids; UNSAT only
};

// Complete DPLL: unit propagation, lowest unassigned variable branched false
// first, chronological backtracking. An UNSAT core is every clause examined.
SatOutcome Solve(const Cnf& cnf);
SatOutcome SolveSubset(const Cnf& cnf, const std::vector<std::size_t>& ids);
// Solve with extra unit literals appended to the clause set.
SatOutcome SolveUnder(const Cnf& cnf, const std::vector<Literal>& units);

// Deletion pass over `core` in order: a clause is dropped whenever the rest
// stays unsatisfiable. Throws InputError if `core` is satisfiable.
std::vector<std::size_t> MinimizeCore(const Cnf& cnf,
                                      std::vector<std::size_t> core);

bool SatisfiesClauses(const Cnf& cnf, const std::vector<bool>& model);

std::string WriteDimacs(const Cnf& cnf);
// Imported variables are original with origin {v - 1, 0}; all clauses land in
// group 0.
Cnf ReadDimacs(const std::string& text);

}  // namespace cgplan

#endif  // CGPLAN_SAT_HPP_

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

#ifndef CGPLAN_FORMULA_HPP_
#define CGPLAN_FORMULA_HPP_

#include <cstddef>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace cgplan {

enum class FormulaOp { kVar, kNot, kAnd, kOr, kImplies, kIff, kTrue, kFalse };

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

// A variable is a proposition index plus a step. Inside action formulas step 0
// is the current state and step 1 the primed (next) state; in BMC formulas the
// step is the time index.
struct VarRef {
  std::size_t prop = 0;
  std::size_t step = 0;
  auto operator<=>(const VarRef&) const = default;
};

struct FormulaNode {
  FormulaOp op = FormulaOp::kTrue;
  VarRef var;                 // kVar only
  std::vector<Formula> args;  // kNot: 1, kImplies/kIff: 2, kAnd/kOr: >= 1
};

Formula MakeVar(std::size_t prop, std::size_t step = 0);
Formula MakeTrue();
Formula MakeFalse();
Formula MakeNot(Formula f);
Formula MakeAnd(std::vector<Formula> args);
Formula MakeOr(std::vector<Formula> args);
Formula MakeImplies(Formula a, Formula b);
Formula MakeIff(Formula a, Formula b);

using Assignment = std::function<bool(VarRef)>;
bool Evaluate(const Formula& f, const Assignment& value);

std::set<VarRef> CollectVars(const Formula& f);

// Rewrites every variable through `map`.
Formula RenameVars(const Formula& f,
                   const std::function<VarRef(VarRef)>& map);

bool StructurallyEqual(const Formula& a, const Formula& b);

// Prints with minimal parentheses under ! > & > | > -> > <->. `name` renders a
// variable.
std::string PrintFormula(const Formula& f,
                         const std::function<std::string(VarRef)>& name);

}  // namespace cgplan

#endif  // CGPLAN_FORMULA_HPP_

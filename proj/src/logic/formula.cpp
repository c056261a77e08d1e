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

#include "cgplan/formula.hpp"

#include "cgplan/errors.hpp"

namespace cgplan {

namespace {

Formula Node(FormulaOp op, std::vector<Formula> args) {
  auto n = std::make_shared<FormulaNode>();
  n->op = op;
  n->args = std::move(args);
  return n;
}

int Precedence(FormulaOp op) {
  switch (op) {
    case FormulaOp::kIff: return 1;
    case FormulaOp::kImplies: return 2;
    case FormulaOp::kOr: return 3;
    case FormulaOp::kAnd: return 4;
    default: return 5;
  }
}

void Print(const Formula& f, const std::function<std::string(VarRef)>& name,
           std::string& out);

void PrintChild(const Formula& child, bool parens,
                const std::function<std::string(VarRef)>& name,
                std::string& out) {
  if (parens) out += '(';
  Print(child, name, out);
  if (parens) out += ')';
}

void Print(const Formula& f, const std::function<std::string(VarRef)>& name,
           std::string& out) {
  const int prec = Precedence(f->op);
  switch (f->op) {
    case FormulaOp::kVar: out += name(f->var); return;
    case FormulaOp::kTrue: out += "true"; return;
    case FormulaOp::kFalse: out += "false"; return;
    case FormulaOp::kNot:
      out += '!';
      PrintChild(f->args[0], Precedence(f->args[0]->op) < 5, name, out);
      return;
    case FormulaOp::kAnd:
    case FormulaOp::kOr: {
      const char* sep = f->op == FormulaOp::kAnd ? " & " : " | ";
      for (std::size_t i = 0; i < f->args.size(); ++i) {
        if (i) out += sep;
        PrintChild(f->args[i], Precedence(f->args[i]->op) <= prec, name, out);
      }
      return;
    }
    case FormulaOp::kImplies:
    case FormulaOp::kIff: {
      // -> groups to the right, <-> to the left.
      const bool right = f->op == FormulaOp::kImplies;
      const int lp = Precedence(f->args[0]->op);
      const int rp = Precedence(f->args[1]->op);
      PrintChild(f->args[0], right ? lp <= prec : lp < prec, name, out);
      out += right ? " -> " : " <-> ";
      PrintChild(f->args[1], right ? rp < prec : rp <= prec, name, out);
      return;
    }
  }
}

}  // namespace

Formula MakeVar(std::size_t prop, std::size_t step) {
  auto n = std::make_shared<FormulaNode>();
  n->op = FormulaOp::kVar;
  n->var = {prop, step};
  return n;
}
Formula MakeTrue() { return Node(FormulaOp::kTrue, {}); }
Formula MakeFalse() { return Node(FormulaOp::kFalse, {}); }
Formula MakeNot(Formula f) { return Node(FormulaOp::kNot, {std::move(f)}); }
Formula MakeAnd(std::vector<Formula> args) {
  CGPLAN_CHECK(!args.empty(), "empty conjunction");
  return Node(FormulaOp::kAnd, std::move(args));
}
Formula MakeOr(std::vector<Formula> args) {
  CGPLAN_CHECK(!args.empty(), "empty disjunction");
  return Node(FormulaOp::kOr, std::move(args));
}
Formula MakeImplies(Formula a, Formula b) {
  return Node(FormulaOp::kImplies, {std::move(a), std::move(b)});
}
Formula MakeIff(Formula a, Formula b) {
  return Node(FormulaOp::kIff, {std::move(a), std::move(b)});
}

bool Evaluate(const Formula& f, const Assignment& value) {
  switch (f->op) {
    case FormulaOp::kVar: return value(f->var);
    case FormulaOp::kTrue: return true;
    case FormulaOp::kFalse: return false;
    case FormulaOp::kNot: return !Evaluate(f->args[0], value);
    case FormulaOp::kAnd:
      for (const auto& a : f->args) {
        if (!Evaluate(a, value)) return false;
      }
      return true;
    case FormulaOp::kOr:
      for (const auto& a : f->args) {
        if (Evaluate(a, value)) return true;
      }
      return false;
    case FormulaOp::kImplies:
      return !Evaluate(f->args[0], value) || Evaluate(f->args[1], value);
    case FormulaOp::kIff:
      return Evaluate(f->args[0], value) == Evaluate(f->args[1], value);
  }
  return false;
}

std::set<VarRef> CollectVars(const Formula& f) {
  std::set<VarRef> out;
  std::vector<const FormulaNode*> stack{f.get()};
  while (!stack.empty()) {
    const FormulaNode* n = stack.back();
    stack.pop_back();
    if (n->op == FormulaOp::kVar) out.insert(n->var);
    for (const auto& a : n->args) stack.push_back(a.get());
  }
  return out;
}

Formula RenameVars(const Formula& f,
                   const std::function<VarRef(VarRef)>& map) {
  if (f->op == FormulaOp::kVar) {
    VarRef v = map(f->var);
    return MakeVar(v.prop, v.step);
  }
  if (f->args.empty()) return f;
  std::vector<Formula> args;
  args.reserve(f->args.size());
  for (const auto& a : f->args) args.push_back(RenameVars(a, map));
  return Node(f->op, std::move(args));
}

bool StructurallyEqual(const Formula& a, const Formula& b) {
  if (a->op != b->op || a->args.size() != b->args.size()) return false;
  if (a->op == FormulaOp::kVar) return a->var == b->var;
  for (std::size_t i = 0; i < a->args.size(); ++i) {
    if (!StructurallyEqual(a->args[i], b->args[i])) return false;
  }
  return true;
}

std::string PrintFormula(const Formula& f,
                         const std::function<std::string(VarRef)>& name) {
  std::string out;
  Print(f, name, out);
  return out;
}

}  // namespace cgplan

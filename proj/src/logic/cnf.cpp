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

#include <map>

#include "cgplan/errors.hpp"
#include "cgplan/sat.hpp"

namespace cgplan {

namespace {

class TseitinEncoder {
 public:
  explicit TseitinEncoder(Cnf& cnf) : cnf_(cnf) {}

  void AddConjunct(const Formula& f) {
    group_ = cnf_.num_groups++;
    switch (f->op) {
      case FormulaOp::kTrue: return;
      case FormulaOp::kFalse: Emit({}); return;
      case FormulaOp::kOr: {
        Clause c;
        for (const auto& a : f->args) c.push_back(Encode(a));
        Emit(std::move(c));
        return;
      }
      default: Emit({Encode(f)});
    }
  }

 private:
  void Emit(Clause c) {
    cnf_.clauses.push_back(std::move(c));
    cnf_.clause_group.push_back(group_);
  }

  Literal Original(VarRef v) {
    auto [it, fresh] = originals_.try_emplace(v, 0);
    if (fresh) {
      cnf_.variables.push_back({false, v, group_});
      it->second = static_cast<Literal>(cnf_.variables.size());
    }
    return it->second;
  }

  Literal Fresh() {
    CnfVariable var;
    var.auxiliary = true;
    var.group = group_;
    cnf_.variables.push_back(var);
    return static_cast<Literal>(cnf_.variables.size());
  }

  Literal Encode(const Formula& f) {
    switch (f->op) {
      case FormulaOp::kVar: return Original(f->var);
      case FormulaOp::kNot: return -Encode(f->args[0]);
      case FormulaOp::kTrue:
      case FormulaOp::kFalse: {
        Literal x = Fresh();
        Emit({x});
        return f->op == FormulaOp::kTrue ? x : -x;
      }
      case FormulaOp::kAnd:
      case FormulaOp::kOr: {
        // For OR the same clauses are written over negated literals.
        const int s = f->op == FormulaOp::kAnd ? 1 : -1;
        std::vector<Literal> kids;
        for (const auto& a : f->args) kids.push_back(s * Encode(a));
        Literal x = s * Fresh();
        Clause back{x};
        for (Literal k : kids) {
          Emit({-x, k});
          back.push_back(-k);
        }
        Emit(std::move(back));
        return s * x;
      }
      case FormulaOp::kImplies: {
        Literal a = Encode(f->args[0]);
        Literal b = Encode(f->args[1]);
        Literal x = Fresh();
        Emit({-x, -a, b});
        Emit({x, a});
        Emit({x, -b});
        return x;
      }
      case FormulaOp::kIff: {
        Literal a = Encode(f->args[0]);
        Literal b = Encode(f->args[1]);
        Literal x = Fresh();
        Emit({-x, -a, b});
        Emit({-x, a, -b});
        Emit({x, a, b});
        Emit({x, -a, -b});
        return x;
      }
    }
    throw InternalError("unknown formula node");
  }

  Cnf& cnf_;
  std::map<VarRef, Literal> originals_;
  std::size_t group_ = 0;
};

void Flatten(const Formula& f, std::vector<Formula>& out) {
  if (f->op == FormulaOp::kAnd) {
    for (const auto& a : f->args) Flatten(a, out);
  } else {
    out.push_back(f);
  }
}

}  // namespace

std::optional<int> Cnf::Find(VarRef v) const {
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (!variables[i].auxiliary && variables[i].origin == v) {
      return static_cast<int>(i + 1);
    }
  }
  return std::nullopt;
}

Cnf ToCnf(const Formula& formula) {
  Cnf cnf;
  std::vector<Formula> conjuncts;
  Flatten(formula, conjuncts);
  TseitinEncoder encoder(cnf);
  for (const auto& c : conjuncts) encoder.AddConjunct(c);
  return cnf;
}

}  // namespace cgplan

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

#include <cstdlib>
#include <sstream>

#include "cgplan/errors.hpp"
#include "cgplan/sat.hpp"

namespace cgplan {

std::string WriteDimacs(const Cnf& cnf) {
  std::ostringstream out;
  out << "p cnf " << cnf.num_vars() << ' ' << cnf.clauses.size() << '\n';
  for (const Clause& c : cnf.clauses) {
    for (Literal l : c) out << l << ' ';
    out << "0\n";
  }
  return out.str();
}

Cnf ReadDimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Cnf cnf;
  bool header = false;
  std::size_t declared = 0;
  Clause current;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first[0] == 'c' || first[0] == '%') continue;
    if (first == "p") {
      std::string format;
      std::size_t vars = 0;
      if (!(ls >> format >> vars >> declared) || format != "cnf") {
        throw InputError("malformed DIMACS header: " + line);
      }
      for (std::size_t v = 0; v < vars; ++v) cnf.variables.push_back({false, {v, 0}, 0});
      header = true;
      continue;
    }
    if (!header) throw InputError("DIMACS clause before header");
    ls.clear();
    ls.str(line);
    long long lit = 0;
    while (ls >> lit) {
      if (lit == 0) {
        cnf.clauses.push_back(std::move(current));
        cnf.clause_group.push_back(0);
        current.clear();
        continue;
      }
      if (static_cast<std::size_t>(std::llabs(lit)) > cnf.num_vars()) {
        throw InputError("DIMACS literal " + std::to_string(lit) +
                         " exceeds declared variable count");
      }
      current.push_back(static_cast<Literal>(lit));
    }
    if (!ls.eof()) throw InputError("malformed DIMACS line: " + line);
  }
  if (!header) throw InputError("missing DIMACS header");
  if (!current.empty()) throw InputError("unterminated DIMACS clause");
  if (cnf.clauses.size() != declared) {
    throw InputError("DIMACS header declares " + std::to_string(declared) +
                     " clauses, found " + std::to_string(cnf.clauses.size()));
  }
  cnf.num_groups = cnf.clauses.empty() ? 0 : 1;
  return cnf;
}

}  // namespace cgplan

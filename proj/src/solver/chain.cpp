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
#include <utility>

#include "cgplan/errors.hpp"
#include "cgplan/solver.hpp"
#include "linear.hpp"

namespace cgplan {

namespace {

using Row = std::vector<std::pair<StateId, double>>;

std::vector<Row> TransitionRows(const Game& game,
                                std::span<const StateId> successor) {
  CGPLAN_CHECK(successor.size() == game.num_states(),
               "successor table does not cover the game");
  std::vector<Row> rows(game.num_states());
  for (StateId v = 0; v < game.num_states(); ++v) {
    if (game.owner(v) == Owner::kRandom) {
      for (const Edge& e : game.successors(v)) {
        rows[v].emplace_back(e.to, e.weight.value_or(0.0));
      }
    } else {
      CGPLAN_CHECK(successor[v] < game.num_states(),
                   "no successor fixed at '" + game.name(v) + "'");
      rows[v].emplace_back(successor[v], 1.0);
    }
  }
  return rows;
}

struct Decomposition {
  std::vector<std::vector<StateId>> classes;  // bottom SCCs
  std::vector<int> class_of;                  // -1 for transient states
  std::vector<StateId> transient;
};

// Tarjan's algorithm (iterative); keeps only SCCs without leaving edges.
Decomposition Decompose(const std::vector<Row>& rows) {
  const std::size_t n = rows.size();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<StateId> stack;
  std::vector<std::vector<StateId>> sccs;
  int counter = 0;
  struct Frame { StateId v; std::size_t next; };
  std::vector<Frame> call;
  for (StateId root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < rows[f.v].size()) {
        StateId w = rows[f.v][f.next++].first;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      StateId v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<StateId> members;
        StateId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = static_cast<int>(sccs.size());
          members.push_back(w);
        } while (w != v);
        std::sort(members.begin(), members.end());
        sccs.push_back(std::move(members));
      }
    }
  }
  std::vector<bool> bottom(sccs.size(), true);
  for (StateId v = 0; v < n; ++v) {
    for (const auto& [w, p] : rows[v]) {
      if (p > 0.0 && comp[w] != comp[v]) bottom[comp[v]] = false;
    }
  }
  Decomposition d;
  d.class_of.assign(n, -1);
  // Order classes by their smallest member for reproducibility.
  std::vector<std::size_t> order;
  for (std::size_t c = 0; c < sccs.size(); ++c) {
    if (bottom[c]) order.push_back(c);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sccs[a].front() < sccs[b].front();
  });
  for (std::size_t c : order) {
    for (StateId v : sccs[c]) d.class_of[v] = static_cast<int>(d.classes.size());
    d.classes.push_back(sccs[c]);
  }
  for (StateId v = 0; v < n; ++v) {
    if (d.class_of[v] < 0) d.transient.push_back(v);
  }
  return d;
}

// Stationary distribution of one recurrent class: pi (I - P_R) = 0, sum = 1.
Eigen::VectorXd Stationary(const std::vector<Row>& rows,
                           const std::vector<StateId>& members) {
  const int m = static_cast<int>(members.size());
  std::vector<int> local(rows.size(), -1);
  for (int i = 0; i < m; ++i) local[members[i]] = i;
  detail::Triplets a;
  // Row i of (I - P_R)^T is the balance equation of state i; the last one is
  // replaced by the normalisation.
  for (int j = 0; j < m; ++j) {
    for (const auto& [w, p] : rows[members[j]]) {
      int i = local[w];
      if (i < 0 || i == m - 1) continue;
      a.emplace_back(i, j, -p);
    }
  }
  for (int i = 0; i < m - 1; ++i) a.emplace_back(i, i, 1.0);
  for (int j = 0; j < m; ++j) a.emplace_back(m - 1, j, 1.0);
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m, 1);
  b(m - 1, 0) = 1.0;
  return detail::SolveLinear(m, a, b).col(0);
}

struct AverageParts {
  Decomposition d;
  std::vector<Eigen::VectorXd> pi;
  ValueFunction gain;
};

AverageParts ComputeGain(const Game& game, const std::vector<Row>& rows) {
  AverageParts parts;
  parts.d = Decompose(rows);
  const auto& d = parts.d;
  parts.gain.assign(rows.size(), 0.0);
  for (const auto& members : d.classes) {
    Eigen::VectorXd pi = Stationary(rows, members);
    double g = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
      g += pi[static_cast<Eigen::Index>(i)] * game.reward(members[i]);
    }
    for (StateId v : members) parts.gain[v] = g;
    parts.pi.push_back(std::move(pi));
  }
  if (d.transient.empty()) return parts;
  // (I - P_TT) g_T = P_T,rec g_rec
  const int t = static_cast<int>(d.transient.size());
  std::vector<int> local(rows.size(), -1);
  for (int i = 0; i < t; ++i) local[d.transient[i]] = i;
  detail::Triplets a;
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(t, 1);
  for (int i = 0; i < t; ++i) {
    a.emplace_back(i, i, 1.0);
    for (const auto& [w, p] : rows[d.transient[i]]) {
      if (local[w] >= 0) {
        a.emplace_back(i, local[w], -p);
      } else {
        b(i, 0) += p * parts.gain[w];
      }
    }
  }
  Eigen::MatrixXd x = detail::SolveLinear(t, a, b);
  for (int i = 0; i < t; ++i) parts.gain[d.transient[i]] = x(i, 0);
  return parts;
}

GainBias AverageWithBias(const Game& game, const std::vector<Row>& rows) {
  AverageParts parts = ComputeGain(game, rows);
  const auto& d = parts.d;
  const int n = static_cast<int>(rows.size());
  const int t = static_cast<int>(d.transient.size());
  const int k = static_cast<int>(d.classes.size());

  // Absorption probabilities X(v, c) for transient v.
  Eigen::MatrixXd absorb(t, k);
  if (t > 0) {
    std::vector<int> local(rows.size(), -1);
    for (int i = 0; i < t; ++i) local[d.transient[i]] = i;
    detail::Triplets a;
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(t, k);
    for (int i = 0; i < t; ++i) {
      a.emplace_back(i, i, 1.0);
      for (const auto& [w, p] : rows[d.transient[i]]) {
        if (local[w] >= 0) {
          a.emplace_back(i, local[w], -p);
        } else {
          b(i, d.class_of[w]) += p;
        }
      }
    }
    absorb = detail::SolveLinear(t, a, b);
  }

  // (I - P + P*) h = r - g
  detail::Triplets m;
  for (int v = 0; v < n; ++v) {
    m.emplace_back(v, v, 1.0);
    for (const auto& [w, p] : rows[v]) {
      m.emplace_back(v, static_cast<int>(w), -p);
    }
  }
  auto add_limit_row = [&](int v, int c, double scale) {
    const auto& members = d.classes[c];
    for (std::size_t i = 0; i < members.size(); ++i) {
      m.emplace_back(v, static_cast<int>(members[i]),
                     scale * parts.pi[c][static_cast<Eigen::Index>(i)]);
    }
  };
  for (int c = 0; c < k; ++c) {
    for (StateId v : d.classes[c]) add_limit_row(static_cast<int>(v), c, 1.0);
  }
  for (int i = 0; i < t; ++i) {
    for (int c = 0; c < k; ++c) {
      if (absorb(i, c) != 0.0) {
        add_limit_row(static_cast<int>(d.transient[i]), c, absorb(i, c));
      }
    }
  }
  Eigen::MatrixXd rhs(n, 1);
  for (int v = 0; v < n; ++v) rhs(v, 0) = game.reward(v) - parts.gain[v];
  Eigen::MatrixXd h = detail::SolveLinear(n, m, rhs);

  GainBias out;
  out.gain = std::move(parts.gain);
  out.bias.resize(n);
  for (int v = 0; v < n; ++v) out.bias[v] = h(v, 0);
  return out;
}

ValueFunction Discounted(const Game& game, const std::vector<Row>& rows,
                         double beta) {
  const int n = static_cast<int>(rows.size());
  detail::Triplets a;
  Eigen::MatrixXd b(n, 1);
  for (int v = 0; v < n; ++v) {
    a.emplace_back(v, v, 1.0);
    for (const auto& [w, p] : rows[v]) {
      a.emplace_back(v, static_cast<int>(w), -beta * p);
    }
    b(v, 0) = game.reward(v);
  }
  Eigen::MatrixXd x = detail::SolveLinear(n, a, b);
  ValueFunction out(n);
  for (int v = 0; v < n; ++v) out[v] = x(v, 0);
  return out;
}

std::vector<StateId> ChainSuccessors(const Game& chain) {
  if (!IsMarkovChain(chain)) {
    throw InputError("not a Markov chain: some player state has a choice");
  }
  std::vector<StateId> succ(chain.num_states(), kNoState);
  for (StateId v = 0; v < chain.num_states(); ++v) {
    if (chain.owner(v) != Owner::kRandom) succ[v] = chain.successors(v)[0].to;
  }
  return succ;
}

}  // namespace

ValueFunction EvaluateChoices(const Game& game,
                              std::span<const StateId> successor,
                              const Objective& objective) {
  auto rows = TransitionRows(game, successor);
  if (objective.discounted()) return Discounted(game, rows, objective.beta);
  return ComputeGain(game, rows).gain;
}

GainBias EvaluateChoicesAverage(const Game& game,
                                std::span<const StateId> successor) {
  return AverageWithBias(game, TransitionRows(game, successor));
}

ValueFunction ChainValue(const Game& chain, const Objective& objective) {
  RequireValid(chain);
  return EvaluateChoices(chain, ChainSuccessors(chain), objective);
}

GainBias ChainGainBias(const Game& chain) {
  RequireValid(chain);
  return EvaluateChoicesAverage(chain, ChainSuccessors(chain));
}

ValueFunction EvaluateProfile(const Game& game, const MemorylessStrategy& f1,
                              const MemorylessStrategy& f2,
                              const Objective& objective) {
  RequireValidStrategy(game, f1);
  RequireValidStrategy(game, f2);
  CGPLAN_CHECK(f1.player == Player::kOne && f2.player == Player::kTwo,
               "profile needs one strategy per player");
  std::vector<StateId> succ(game.num_states(), kNoState);
  for (StateId v = 0; v < game.num_states(); ++v) {
    if (game.owner(v) == Owner::kPlayer1) succ[v] = f1(v);
    if (game.owner(v) == Owner::kPlayer2) succ[v] = f2(v);
  }
  return EvaluateChoices(game, succ, objective);
}

}  // namespace cgplan

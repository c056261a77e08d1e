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

#include <array>
#include <cmath>
#include <map>
#include <numeric>

#include "cgplan/errors.hpp"
#include "cgplan/io.hpp"

namespace cgplan {

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

double Rng::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t Rng::Below(std::size_t n) {
  CGPLAN_CHECK(n > 0, "Below(0)");
  return std::min(n - 1, static_cast<std::size_t>(Uniform() * static_cast<double>(n)));
}

double Rng::Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

Game GenerateRandomGame(const RandomGameParams& params) {
  const auto& p = params;
  if (p.num_states == 0) throw InputError("random game needs at least one state");
  if (p.p1_fraction < 0 || p.p2_fraction < 0 ||
      p.p1_fraction + p.p2_fraction > 1.0 + 1e-12) {
    throw InputError("owner fractions must lie in [0,1] and sum to at most 1");
  }
  if (!(p.reward_min <= p.reward_max)) throw InputError("empty reward range");

  Rng rng(p.seed);
  GameBuilder builder;
  std::vector<Owner> owners;
  for (std::size_t i = 0; i < p.num_states; ++i) {
    const double u = rng.Uniform();
    const Owner owner = u < p.p1_fraction                   ? Owner::kPlayer1
                        : u < p.p1_fraction + p.p2_fraction ? Owner::kPlayer2
                                                            : Owner::kRandom;
    const double reward =
        std::round(rng.Uniform(p.reward_min, p.reward_max) * 1000.0) / 1000.0;
    owners.push_back(owner);
    builder.AddState(owner, reward);
  }
  for (std::size_t i = 0; i < p.num_states; ++i) {
    const std::size_t degree =
        std::min(rng.Below(p.max_out_degree + 1), p.num_states);
    // Partial Fisher-Yates for distinct targets.
    std::vector<StateId> pool(p.num_states);
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<StateId> targets;
    for (std::size_t k = 0; k < degree; ++k) {
      std::swap(pool[k], pool[k + rng.Below(p.num_states - k)]);
      targets.push_back(pool[k]);
    }
    if (targets.empty()) targets.push_back(i);
    if (owners[i] != Owner::kRandom) {
      for (StateId t : targets) builder.AddEdge(i, t);
      continue;
    }
    std::vector<double> w;
    for (std::size_t k = 0; k < targets.size(); ++k) w.push_back(1.0 + rng.Below(9));
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (std::size_t k = 0; k < targets.size(); ++k) {
      builder.AddEdge(i, targets[k], w[k] / total);
    }
  }
  builder.SetInitial(0);
  return builder.Build();
}

namespace {

struct Move {
  char name;
  int dx, dy;
};
constexpr std::array<Move, 4> kMoves{{{'N', 0, 1}, {'S', 0, -1}, {'E', 1, 0}, {'W', -1, 0}}};

}  // namespace

Game GenerateGridworld(const GridworldParams& params) {
  const auto& p = params;
  if (p.width == 0 || p.height == 0) throw InputError("grid dimensions must be >= 1");
  if (!(p.slip >= 0.0 && p.slip < 1.0)) throw InputError("slip must lie in [0,1)");
  if (!(p.wall_density >= 0.0 && p.wall_density < 1.0)) {
    throw InputError("wall density must lie in [0,1)");
  }
  const int w = static_cast<int>(p.width), h = static_cast<int>(p.height);
  const auto start = std::pair{0, 0};
  const auto goal = std::pair{w - 1, h - 1};

  Rng rng(p.seed);
  std::vector<bool> wall(p.width * p.height, false);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const bool draw = rng.Uniform() < p.wall_density;
      if (std::pair{x, y} != start && std::pair{x, y} != goal) {
        wall[y * w + x] = draw;
      }
    }
  }
  auto open = [&](int x, int y) {
    return x >= 0 && y >= 0 && x < w && y < h && !wall[y * w + x];
  };
  auto tag = [](int x, int y) {
    return std::to_string(x) + "_" + std::to_string(y);
  };

  GameBuilder b;
  std::map<std::pair<int, int>, StateId> cell;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!open(x, y)) continue;
      cell[{x, y}] = b.AddState(Owner::kPlayer1,
                                std::pair{x, y} == goal ? 1.0 : 0.0,
                                "c" + tag(x, y));
    }
  }
  for (const auto& [xy, c] : cell) {
    const auto [x, y] = xy;
    const double reward = xy == goal ? 1.0 : 0.0;
    std::map<char, StateId> slip_state;
    auto mover = [&](const Move& m) {
      auto it = slip_state.find(m.name);
      if (it != slip_state.end()) return it->second;
      const StateId s = b.AddState(Owner::kRandom, reward,
                                   "m" + tag(x, y) + "_" + m.name);
      const StateId target = cell.at({x + m.dx, y + m.dy});
      if (p.slip > 0.0) {
        b.AddEdge(s, target, 1.0 - p.slip);
        b.AddEdge(s, c, p.slip);
      } else {
        b.AddEdge(s, target, 1.0);
      }
      slip_state[m.name] = s;
      return s;
    };
    b.AddEdge(c, c);  // stay
    for (const Move& m : kMoves) {
      if (!open(x + m.dx, y + m.dy)) continue;
      if (!p.adversary) {
        b.AddEdge(c, mover(m));
        continue;
      }
      const StateId d = b.AddState(Owner::kPlayer2, reward,
                                   "d" + tag(x, y) + "_" + m.name);
      b.AddEdge(c, d);
      b.AddEdge(d, mover(m));
      for (const Move& q : kMoves) {
        if ((q.dx != 0) == (m.dx != 0) || !open(x + q.dx, y + q.dy)) continue;
        b.AddEdge(d, mover(q));
        break;
      }
    }
  }
  b.SetInitial(cell.at(start));
  return b.Build();
}

}  // namespace cgplan

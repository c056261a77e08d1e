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

#ifndef CGPLAN_IO_HPP_
#define CGPLAN_IO_HPP_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "cgplan/game.hpp"
#include "json.hpp"

namespace cgplan {

// mt19937_64 with a platform-independent mapping to doubles and integers, so
// generated instances are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  double Uniform();                         // [0, 1)
  std::size_t Below(std::size_t n);         // [0, n)
  double Uniform(double lo, double hi);     // [lo, hi)

 private:
  std::mt19937_64 engine_;
};

struct RandomGameParams {
  std::size_t num_states = 6;
  std::size_t max_out_degree = 3;
  double p1_fraction = 1.0 / 3.0;
  double p2_fraction = 1.0 / 3.0;
  double reward_min = 0.0;
  double reward_max = 1.0;
  std::uint64_t seed = 0;
};

// Owners drawn per state, out-degree uniform in [0, max_out_degree] over
// distinct targets, dead states given a self-loop, random-state weights drawn
// from {1..9} and normalized. Rewards are rounded to three decimals. State 0
// is initial.
Game GenerateRandomGame(const RandomGameParams& params);

struct GridworldParams {
  std::size_t width = 2;
  std::size_t height = 1;
  double slip = 0.0;
  bool adversary = false;
  std::uint64_t seed = 0;
  double wall_density = 0.2;
};

// Cell (x, y) is player-1 state "c{x}_{y}"; start is (0, 0) and goal is
// (width-1, height-1) with reward 1. Moves N/S/E/W go through a random state
// that reaches the target with probability 1 - slip and stays otherwise; with
// an adversary, a player-2 state picks between the intended move and the
// first valid perpendicular one. Auxiliary states carry their cell's reward.
Game GenerateGridworld(const GridworldParams& params);

std::uint64_t Fnv1a64(std::string_view bytes);
std::string HexDigest(std::uint64_t digest);

struct RunReport {
  std::string command;
  std::string input_digest;
  std::string verdict;
  int exit_code = 0;
  nlohmann::json results = nlohmann::json::object();
  std::optional<std::string> trace_path;
  double wall_clock_seconds = 0.0;
  std::optional<std::uint64_t> seed;

  nlohmann::json ToJson() const;
};

}  // namespace cgplan

#endif  // CGPLAN_IO_HPP_

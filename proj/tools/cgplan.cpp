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

// Command-line front end: validate, classify, solve, oracle, plan, abstract,
// boolplan and instance generators.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cgplan/abstraction.hpp"
#include "cgplan/boolplan.hpp"
#include "cgplan/cegar.hpp"
#include "cgplan/errors.hpp"
#include "cgplan/game.hpp"
#include "cgplan/game_io.hpp"
#include "cgplan/io.hpp"
#include "cgplan/solver.hpp"

namespace {

using cgplan::FormatValue;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct Options {
  std::string input;
  std::string objective = "discounted";
  double beta = 0.9;
  std::optional<double> goal;
  std::string trace;
  std::string report;
  std::string out;
  std::string partition;
  std::optional<std::uint64_t> seed;
  std::size_t max_iters = 0;

  // gen random
  std::size_t states = 6;
  std::size_t degree = 3;
  double p1 = 1.0 / 3.0;
  double p2 = 1.0 / 3.0;
  double rmin = 0.0;
  double rmax = 1.0;
  // gen gridworld
  std::size_t width = 2;
  std::size_t height = 1;
  double slip = 0.0;
  bool adversary = false;
};

cgplan::Objective MakeObjective(const Options& o) {
  if (o.objective == "average") return cgplan::Objective::Average();
  return cgplan::Objective::Discounted(o.beta);
}

double RequireGoal(const Options& o) {
  if (!o.goal) throw cgplan::InputError("--goal is required");
  return *o.goal;
}

void Emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
  } else {
    cgplan::WriteTextFile(o.out, text);
  }
}

std::string Dump(const json& doc) { return doc.dump(2) + "\n"; }

json ValuesJson(const cgplan::Game& game, const cgplan::ValueFunction& v) {
  json out = json::object();
  for (cgplan::StateId s = 0; s < game.num_states(); ++s) {
    out[game.name(s)] = std::stod(FormatValue(v[s]));
  }
  return out;
}

int RunValidate(const Options& o, cgplan::RunReport& report) {
  const cgplan::Game game = cgplan::ReadGameFile(o.input);
  const auto violations = cgplan::Validate(game);
  for (const auto& v : violations) std::cout << v.message << "\n";
  report.results["violations"] = violations.size();
  if (!violations.empty()) {
    report.verdict = "invalid";
    return kExitNegative;
  }
  std::cout << "valid\n";
  report.verdict = "valid";
  return kExitOk;
}

int RunClassify(const Options& o, cgplan::RunReport& report) {
  const cgplan::Game game = cgplan::ReadGameFile(o.input);
  cgplan::RequireValid(game);
  const auto name = std::string(cgplan::GameClassName(cgplan::Classify(game)));
  std::cout << name << "\n";
  report.verdict = "ok";
  report.results["class"] = name;
  return kExitOk;
}

int RunSolve(const Options& o, cgplan::RunReport& report) {
  const cgplan::Game game = cgplan::ReadGameFile(o.input);
  cgplan::RequireValid(game);
  const auto objective = MakeObjective(o);
  const auto v0 = game.initial();
  report.results["objective"] = cgplan::ObjectiveName(objective);
  if (!o.goal) {
    const auto values = cgplan::SolveGameValues(game, objective);
    std::cout << "val1(" << game.name(v0) << ")=" << FormatValue(values.val1[v0])
              << "\n";
    report.verdict = "solved";
    report.results["val1"] = ValuesJson(game, values.val1);
    if (!o.out.empty()) {
      Emit(o, Dump({{"val1", ValuesJson(game, values.val1)},
                    {"opt1", cgplan::StrategyToJson(game, values.opt1)},
                    {"opt2", cgplan::StrategyToJson(game, values.opt2)}}));
    }
    return kExitOk;
  }
  const auto solved = cgplan::GameSolve(game, objective, *o.goal);
  const bool wins = solved.winner == cgplan::Player::kOne;
  std::cout << "val1(" << game.name(v0) << ")=" << FormatValue(solved.val1[v0])
            << "\nwinner=" << (wins ? 1 : 2) << "\n";
  if (solved.boundary) std::cout << "boundary=true\n";
  report.verdict = wins ? "feasible" : "infeasible";
  report.results["p"] = *o.goal;
  report.results["val1_v0"] = solved.val1[v0];
  report.results["boundary"] = solved.boundary;
  if (!o.out.empty()) Emit(o, Dump(cgplan::StrategyToJson(game, solved.strategy)));
  return wins ? kExitOk : kExitNegative;
}

int RunOracle(const Options& o, cgplan::RunReport& report) {
  const cgplan::Game game = cgplan::ReadGameFile(o.input);
  cgplan::RequireValid(game);
  const auto objective = MakeObjective(o);
  const auto values = cgplan::BruteForceValues(game, objective);
  std::cout << "val1(" << game.name(game.initial())
            << ")=" << FormatValue(values[game.initial()]) << "\n";
  report.verdict = "solved";
  report.results["val1"] = ValuesJson(game, values);
  report.results["profiles"] = cgplan::CountProfiles(game);
  if (!o.out.empty()) Emit(o, Dump({{"val1", ValuesJson(game, values)}}));
  return kExitOk;
}

int RunPlan(const Options& o, cgplan::RunReport& report) {
  const cgplan::Game game = cgplan::ReadGameFile(o.input);
  cgplan::RequireValid(game);
  const auto objective = MakeObjective(o);
  const double p = RequireGoal(o);
  cgplan::PlanOptions options;
  options.max_iterations = o.max_iters;
  const auto outcome = cgplan::CounterexampleGuidedPlan(game, objective, p, options);
  const auto cert = cgplan::CertifyOutcome(game, objective, p, outcome);
  CGPLAN_CHECK(cert.holds, "plan outcome failed certification");

  if (!o.trace.empty()) {
    std::string lines;
    for (const auto& r : outcome.trace) {
      lines += cgplan::TraceRecordToJson(game, r).dump() + "\n";
    }
    cgplan::WriteTextFile(o.trace, lines);
    report.trace_path = o.trace;
  }
  for (const auto& r : outcome.trace) {
    std::cout << "iter " << r.iter << ": " << r.abstract_states
              << " abstract states, val1=" << FormatValue(r.abstract_val1_v0);
    if (r.split_operator) {
      std::cout << ", SPURIOUS, " << cgplan::SplitOperatorName(*r.split_operator);
    }
    std::cout << "\n";
  }
  std::filesystem::path out = o.out;
  if (out.empty()) {
    out = std::filesystem::path(o.input);
    out.replace_extension(".plan.json");
  }
  const bool feasible = outcome.feasible();
  const auto& strategy =
      feasible ? std::get<cgplan::FeasiblePlan>(outcome.verdict).plan
               : std::get<cgplan::InfeasiblePlan>(outcome.verdict).concrete_spoiler;
  cgplan::WriteTextFile(out, Dump(cgplan::StrategyToJson(game, strategy)));
  std::cout << (feasible ? "FEASIBLE" : "INFEASIBLE") << " after "
            << outcome.refinements() << " refinements; certified value "
            << FormatValue(cert.value) << "\n"
            << (feasible ? "plan" : "spoiler") << " written to " << out.string()
            << "\n";
  report.verdict = feasible ? "feasible" : "infeasible";
  report.results["p"] = p;
  report.results["refinements"] = outcome.refinements();
  report.results["certified_value"] = cert.value;
  report.results["strategy_file"] = out.string();
  return feasible ? kExitOk : kExitNegative;
}

int RunAbstract(const Options& o, cgplan::RunReport& report) {
  const cgplan::Game game = cgplan::ReadGameFile(o.input);
  cgplan::RequireValid(game);
  cgplan::StatePartition partition =
      o.partition.empty()
          ? cgplan::InitialAbstraction(game)
          : cgplan::PartitionFromJson(game,
                                      json::parse(cgplan::ReadTextFile(o.partition)));
  const auto abstraction = cgplan::BuildAbstraction(game, partition);
  Emit(o, Dump(cgplan::AbstractionToJson(game, abstraction)));
  report.verdict = "ok";
  report.results["blocks"] = abstraction.partition.size();
  report.results["repair_splits"] = abstraction.repair_splits;
  return kExitOk;
}

int RunBoolplan(const Options& o, cgplan::RunReport& report) {
  const auto system = cgplan::ParseBooleanSystem(cgplan::ReadTextFile(o.input));
  const auto result = cgplan::BooleanCegarPlan(system);
  if (!o.trace.empty()) {
    std::string lines;
    for (std::size_t i = 0; i < result.iterations.size(); ++i) {
      const auto& it = result.iterations[i];
      json pi = json::array(), added = json::array();
      for (auto p : it.pi) pi.push_back(system.props[p]);
      for (auto p : it.added) added.push_back(system.props[p]);
      json line{{"iter", i + 1}, {"projection", pi},
                {"abstract_plan", it.abstract_plan ? json(it.abstract_plan->actions)
                                                   : json(nullptr)},
                {"bmc_satisfiable", it.bmc_satisfiable},
                {"added", added}};
      lines += line.dump() + "\n";
    }
    cgplan::WriteTextFile(o.trace, lines);
    report.trace_path = o.trace;
  }
  report.results["iterations"] = result.iterations.size();
  if (!result.feasible) {
    std::cout << "INFEASIBLE after " << result.iterations.size() << " iterations\n";
    report.verdict = "unreachable";
    return kExitNegative;
  }
  std::string plan;
  for (const auto& a : result.plan) plan += (plan.empty() ? "" : " ") + a;
  std::cout << "plan: " << plan << "\n";
  for (std::size_t t = 0; t < result.trace.size(); ++t) {
    std::cout << "  x" << t << ":";
    for (std::size_t p = 0; p < system.props.size(); ++p) {
      std::cout << ' ' << (result.trace[t][p] ? "" : "!") << system.props[p];
    }
    std::cout << "\n";
  }
  report.verdict = "feasible";
  report.results["plan"] = result.plan;
  return kExitOk;
}

int RunGenRandom(const Options& o, cgplan::RunReport& report) {
  cgplan::RandomGameParams params;
  params.num_states = o.states;
  params.max_out_degree = o.degree;
  params.p1_fraction = o.p1;
  params.p2_fraction = o.p2;
  params.reward_min = o.rmin;
  params.reward_max = o.rmax;
  params.seed = o.seed.value_or(0);
  Emit(o, cgplan::SerializeGame(cgplan::GenerateRandomGame(params)));
  report.verdict = "ok";
  return kExitOk;
}

int RunGenGridworld(const Options& o, cgplan::RunReport& report) {
  cgplan::GridworldParams params;
  params.width = o.width;
  params.height = o.height;
  params.slip = o.slip;
  params.adversary = o.adversary;
  params.seed = o.seed.value_or(0);
  Emit(o, cgplan::SerializeGame(cgplan::GenerateGridworld(params)));
  report.verdict = "ok";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CEGAR planning for perfect-information stochastic games"};
  app.require_subcommand(1);
  Options o;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", o.input, "Input file")->required();
  };
  auto add_objective = [&](CLI::App* sub) {
    sub->add_option("--objective", o.objective, "discounted or average")
        ->check(CLI::IsMember({"discounted", "average"}));
    sub->add_option("--beta", o.beta, "Discount factor in (0,1)");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--report", o.report, "Write a JSON run report");
    sub->add_option("--out", o.out, "Output file");
  };

  auto* validate = app.add_subcommand("validate", "Check game structure");
  add_input(validate);
  add_common(validate);
  auto* classify = app.add_subcommand("classify", "Report the game class");
  add_input(classify);
  add_common(classify);
  auto* solve = app.add_subcommand("solve", "Solve a game exactly");
  add_input(solve);
  add_objective(solve);
  add_common(solve);
  solve->add_option("--goal", o.goal, "Goal value p");
  auto* oracle = app.add_subcommand("oracle", "Values by strategy enumeration");
  add_input(oracle);
  add_objective(oracle);
  add_common(oracle);
  auto* plan = app.add_subcommand("plan", "Counterexample-guided planning");
  add_input(plan);
  add_objective(plan);
  add_common(plan);
  plan->add_option("--goal", o.goal, "Goal value p");
  plan->add_option("--trace", o.trace, "Write the iteration trace as JSONL");
  plan->add_option("--max-iters", o.max_iters, "Iteration cap (0 = automatic)");
  auto* abstract = app.add_subcommand("abstract", "Build an abstract game");
  add_input(abstract);
  add_common(abstract);
  abstract->add_option("--partition", o.partition, "Partition JSON");
  auto* boolplan = app.add_subcommand("boolplan", "Plan in a boolean system");
  add_input(boolplan);
  add_common(boolplan);
  boolplan->add_option("--trace", o.trace, "Write the iteration trace as JSONL");

  auto* gen = app.add_subcommand("gen", "Generate instances");
  gen->require_subcommand(1);
  auto* gen_random = gen->add_subcommand("random", "Random game");
  add_common(gen_random);
  gen_random->add_option("--seed", o.seed, "RNG seed");
  gen_random->add_option("--states", o.states, "Number of states");
  gen_random->add_option("--degree", o.degree, "Maximum out-degree");
  gen_random->add_option("--p1", o.p1, "Fraction of player-1 states");
  gen_random->add_option("--p2", o.p2, "Fraction of player-2 states");
  gen_random->add_option("--rmin", o.rmin, "Minimum reward");
  gen_random->add_option("--rmax", o.rmax, "Maximum reward");
  auto* gen_grid = gen->add_subcommand("gridworld", "Gridworld game");
  add_common(gen_grid);
  gen_grid->add_option("--seed", o.seed, "RNG seed");
  gen_grid->add_option("--width", o.width, "Grid width");
  gen_grid->add_option("--height", o.height, "Grid height");
  gen_grid->add_option("--slip", o.slip, "Slip probability in [0,1)");
  gen_grid->add_flag("--adversary", o.adversary, "Add player-2 move states");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  cgplan::RunReport report;
  const auto start = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    if (!o.input.empty()) {
      report.input_digest = cgplan::HexDigest(cgplan::Fnv1a64(cgplan::ReadTextFile(o.input)));
    }
    report.seed = o.seed;
    if (validate->parsed()) {
      report.command = "validate";
      code = RunValidate(o, report);
    } else if (classify->parsed()) {
      report.command = "classify";
      code = RunClassify(o, report);
    } else if (solve->parsed()) {
      report.command = "solve";
      code = RunSolve(o, report);
    } else if (oracle->parsed()) {
      report.command = "oracle";
      code = RunOracle(o, report);
    } else if (plan->parsed()) {
      report.command = "plan";
      code = RunPlan(o, report);
    } else if (abstract->parsed()) {
      report.command = "abstract";
      code = RunAbstract(o, report);
    } else if (boolplan->parsed()) {
      report.command = "boolplan";
      code = RunBoolplan(o, report);
    } else if (gen_random->parsed()) {
      report.command = "gen random";
      code = RunGenRandom(o, report);
    } else {
      report.command = "gen gridworld";
      code = RunGenGridworld(o, report);
    }
  } catch (const cgplan::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    report.verdict = "input_error";
    code = kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    report.verdict = "internal_error";
    code = kExitInternal;
  }
  report.exit_code = code;
  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.report.empty()) {
    try {
      cgplan::WriteTextFile(o.report, Dump(report.ToJson()));
    } catch (const std::exception& e) {
      std::cerr << "error: cannot write report: " << e.what() << "\n";
      return kExitInput;
    }
  }
  return code;
}

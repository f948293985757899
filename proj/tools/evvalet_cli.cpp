// Copyright 2026 The evvalet Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end.
//
//   evvalet solve --instance FILE --algo ALGO [--seed S] [--repeats K] --out FILE
//   evvalet bench --n LIST --ratio LIST --trials N --seed S --format csv|md --out FILE
//   evvalet reduce --tdm FILE --M INT --out FILE
//   evvalet verify-reduction --tdm FILE --M INT
//
// Exit codes: 0 success, 1 usage or input error, 2 refused (precondition or
// size cap), 3 solver failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evvalet/approx.hpp"
#include "evvalet/bench.hpp"
#include "evvalet/core.hpp"
#include "evvalet/exact.hpp"
#include "evvalet/io.hpp"
#include "evvalet/lp.hpp"
#include "evvalet/reduction.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRefused = 2;
constexpr int kExitSolver = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  if (path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << data;
}

evvalet::Schedule run_solver(const evvalet::Instance& inst,
                             const std::string& algo, std::uint64_t seed,
                             int repeats) {
  using namespace evvalet;
  if (algo == "greedy") return greedy_schedule(inst);
  if (algo == "rr") return randomized_rounding(inst, solve_lp(inst), seed);
  if (algo == "brr") return boosted_rr(inst, solve_lp(inst), repeats, seed);
  if (algo == "zero-charge") return solve_zero_charge(inst);
  if (algo == "single") return solve_single_vehicle(inst);
  if (algo == "const-m") return solve_constant_m(inst);
  if (algo == "homog") return solve_homogeneous(inst);
  if (algo == "brute") return brute_force_opt(inst);
  throw std::invalid_argument("unknown algorithm " + algo);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EV valet discharge scheduling"};
  app.require_subcommand(1);

  std::string instance_path, out_path, algo = "greedy";
  std::uint64_t seed = 1;
  int repeats = 10;
  auto* solve = app.add_subcommand("solve", "Solve an instance document");
  solve->add_option("--instance", instance_path)->required();
  solve->add_option("--algo", algo)
      ->required()
      ->check(CLI::IsMember({"greedy", "rr", "brr", "zero-charge", "single",
                             "const-m", "homog", "brute"}));
  solve->add_option("--seed", seed);
  solve->add_option("--repeats", repeats)->check(CLI::Range(1, 1000000));
  solve->add_option("--out", out_path)->required();

  std::vector<int> bench_n{1, 5, 10}, bench_ratio{1, 2};
  int trials = 10;
  std::string format = "csv";
  bool allow_large_lp = false;
  auto* bench = app.add_subcommand("bench", "Run the simulation grid");
  bench->add_option("--n", bench_n)->delimiter(',')->required();
  bench->add_option("--ratio", bench_ratio)->delimiter(',')->required();
  bench->add_option("--trials", trials)->required()->check(CLI::Range(1, 1000000));
  bench->add_option("--seed", seed)->required();
  bench->add_option("--format", format)->check(CLI::IsMember({"csv", "md"}));
  bench->add_option("--out", out_path)->required();
  bench->add_flag("--allow-large-lp", allow_large_lp);

  std::string tdm_path;
  int big_m = 0;
  auto* reduce = app.add_subcommand("reduce", "Build an instance from a 3DM document");
  reduce->add_option("--tdm", tdm_path)->required();
  reduce->add_option("--M", big_m)->required();
  reduce->add_option("--out", out_path)->required();

  auto* verify = app.add_subcommand(
      "verify-reduction", "Decide both sides of the 3DM reduction exhaustively");
  verify->add_option("--tdm", tdm_path)->required();
  verify->add_option("--M", big_m)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*solve) {
      const auto inst = evvalet::load_instance(read_file(instance_path));
      const auto sched = run_solver(inst, algo, seed, repeats);
      if (auto rep = evvalet::is_feasible(sched, inst); !rep) {
        std::cerr << "internal error: infeasible schedule: " << rep.violation << "\n";
        return kExitSolver;
      }
      write_file(out_path, evvalet::save_schedule(sched));
    } else if (*bench) {
      evvalet::bench::Grid grid;
      grid.stations = bench_n;
      grid.ratios = bench_ratio;
      grid.trials = trials;
      grid.seed = seed;
      evvalet::bench::OraclePolicy policy;
      policy.allow_large_lp = allow_large_lp;
      using evvalet::bench::Algorithm;
      const auto rows = evvalet::bench::run_experiment(
          grid, {Algorithm::kGreedy, Algorithm::kRR, Algorithm::kBRR}, policy);
      write_file(out_path,
                 evvalet::bench::emit_results(
                     rows, format == "md" ? evvalet::bench::Format::kMarkdown
                                          : evvalet::bench::Format::kCsv));
    } else if (*reduce) {
      const auto tdm = evvalet::load_tdm(read_file(tdm_path));
      write_file(out_path, evvalet::save_instance(evvalet::reduce_to_valet(tdm, big_m)));
    } else if (*verify) {
      const auto tdm = evvalet::load_tdm(read_file(tdm_path));
      const auto check = evvalet::verify_reduction(tdm, big_m);
      std::cout << "matching_exists " << (check.matching_exists ? "true" : "false")
                << "\nfull_reward_achievable "
                << (check.full_reward_achievable ? "true" : "false") << "\n";
    }
  } catch (const evvalet::RefusedError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitRefused;
  } catch (const evvalet::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const evvalet::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitSolver;
  }
  return 0;
}

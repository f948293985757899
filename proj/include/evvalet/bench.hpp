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

// Simulation harness: random instance generation, algorithm comparison
// against an exact optimum or an upper bound, and table output.

#ifndef EVVALET_BENCH_HPP
#define EVVALET_BENCH_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "evvalet/approx.hpp"
#include "evvalet/core.hpp"
#include "evvalet/exact.hpp"
#include "evvalet/lp.hpp"

namespace evvalet::bench {

struct GenConfig {
  int stations = 1;
  /// Vehicles per station; m = ratio * stations.
  int ratio = 1;
  int horizon = 24;
  std::uint64_t seed = 1;
  int trials = 10;
};

inline void validate(const GenConfig& cfg) {
  if (cfg.stations < 1 || cfg.ratio < 1 || cfg.trials < 1 || cfg.horizon < 1) {
    throw std::invalid_argument("GenConfig: stations, ratio, trials and horizon must be >= 1");
  }
}

/// RNG for one (seed, n, R, trial, purpose) key.
inline std::mt19937_64 trial_rng(const GenConfig& cfg, int trial,
                                 std::uint32_t purpose) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed),
                    static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(cfg.stations),
                    static_cast<std::uint32_t>(cfg.ratio),
                    static_cast<std::uint32_t>(trial), purpose};
  return std::mt19937_64(seq);
}

namespace detail {

struct VehicleDraw {
  Vehicle vehicle;
  /// 1 for a single long interval, 3 for three short ones.
  int intervals = 0;
};

/// Charge time uniform on 1..6; with probability 1/2 one interval of length
/// 1..24, else three intervals of length 1..8. Every interval starts
/// uniformly in 1..horizon and is cut at the horizon.
inline VehicleDraw draw_vehicle(std::mt19937_64& rng, int horizon) {
  std::uniform_int_distribution<int> charge(1, 6);
  std::uniform_int_distribution<int> start(1, horizon);
  std::uniform_int_distribution<int> long_len(1, 24);
  std::uniform_int_distribution<int> short_len(1, 8);
  std::bernoulli_distribution single_interval(0.5);
  VehicleDraw out;
  out.vehicle.charge_time = charge(rng);
  const bool one = single_interval(rng);
  out.intervals = one ? 1 : 3;
  std::set<int> avail;
  for (int q = 0; q < out.intervals; ++q) {
    const int len = one ? long_len(rng) : short_len(rng);
    const int s = start(rng);
    for (int t = s; t < s + len && t <= horizon; ++t) avail.insert(t);
  }
  out.vehicle.availability.assign(avail.begin(), avail.end());
  return out;
}

}  // namespace detail

/// Random instance: vehicles from detail::draw_vehicle, then station
/// rewards that start uniform on [0, 100] and drift within 70%-130% of the
/// previous slot while staying within +-25 of the first slot and within
/// [0, 100].
inline Instance generate_instance(const GenConfig& cfg, int trial) {
  validate(cfg);
  auto rng = trial_rng(cfg, trial, 0);
  const int horizon = cfg.horizon;
  Instance inst;
  inst.horizon = horizon;
  inst.num_stations = cfg.stations;
  const int m = cfg.ratio * cfg.stations;
  for (int i = 0; i < m; ++i) {
    inst.vehicles.push_back(detail::draw_vehicle(rng, horizon).vehicle);
  }

  inst.rewards.assign(cfg.stations, std::vector<double>(horizon));
  for (int j = 0; j < cfg.stations; ++j) {
    auto& row = inst.rewards[j];
    row[0] = std::uniform_real_distribution<double>(0.0, 100.0)(rng);
    for (int t = 1; t < horizon; ++t) {
      const double lo = std::max({0.7 * row[t - 1], row[0] - 25.0, 0.0});
      const double hi = std::min({1.3 * row[t - 1], row[0] + 25.0, 100.0});
      row[t] = lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    }
  }
  return inst;
}

// ---------------------------------------------------------------------------
// Denominators

enum class Denominator { kExact, kLP, kRelaxed };

inline const char* to_string(Denominator d) {
  switch (d) {
    case Denominator::kExact: return "exact";
    case Denominator::kLP: return "lp";
    case Denominator::kRelaxed: return "relaxed";
  }
  return "?";
}

struct OraclePolicy {
  BruteForceLimits brute{3, 2, 10, 5'000'000};
  int const_m_max_vehicles = 6;
  std::size_t const_m_max_states = 2'000'000;
  /// LP-based paths (RR, BRR, LP denominator) are skipped above this many
  /// variables unless allow_large_lp is set.
  std::size_t lp_max_vars = 50'000;
  bool allow_large_lp = false;
};

/// Optimum of the instance with all charge times set to zero, which upper
/// bounds the true optimum: at each t the best min(n, present) positive
/// rewards.
inline double zero_charge_bound(const Instance& inst) {
  double total = 0.0;
  for (int t = 1; t <= inst.horizon; ++t) {
    int present = 0;
    for (const auto& v : inst.vehicles) present += v.available_at(t) ? 1 : 0;
    const auto order = positive_stations_by_reward(inst, t);
    const int k = std::min<int>(present, static_cast<int>(order.size()));
    for (int q = 0; q < k; ++q) total += inst.reward(order[q], t);
  }
  return total;
}

struct Reference {
  double value = 0.0;
  Denominator kind = Denominator::kExact;
};

/// Exact optimum when a solver applies within the policy, otherwise
/// `lp_objective` when given, otherwise the zero-charge bound.
inline Reference reference_value(const Instance& inst,
                                 const OraclePolicy& policy,
                                 const double* lp_objective) {
  const int m = inst.num_vehicles();
  const bool all_zero = std::all_of(
      inst.vehicles.begin(), inst.vehicles.end(),
      [](const Vehicle& v) { return v.charge_time == 0; });
  if (m <= policy.brute.max_vehicles &&
      inst.num_stations <= policy.brute.max_stations &&
      inst.horizon <= policy.brute.max_horizon) {
    return {brute_force_opt(inst, policy.brute).total_reward(), Denominator::kExact};
  }
  if (m == 1) return {solve_single_vehicle(inst).total_reward(), Denominator::kExact};
  if (all_zero) return {solve_zero_charge(inst).total_reward(), Denominator::kExact};
  if (m <= policy.const_m_max_vehicles &&
      constant_m_table_size(inst) <= static_cast<double>(policy.const_m_max_states)) {
    ConstantMOptions opt{policy.const_m_max_vehicles, policy.const_m_max_states};
    return {solve_constant_m(inst, opt).total_reward(), Denominator::kExact};
  }
  if (is_homogeneous(inst) && inst.vehicles[0].charge_time <= 4) {
    return {solve_homogeneous(inst).total_reward(), Denominator::kExact};
  }
  if (lp_objective) return {*lp_objective, Denominator::kLP};
  return {zero_charge_bound(inst), Denominator::kRelaxed};
}

// ---------------------------------------------------------------------------
// Experiments

enum class Algorithm { kGreedy, kRR, kBRR };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kGreedy: return "greedy";
    case Algorithm::kRR: return "rr";
    case Algorithm::kBRR: return "brr";
  }
  return "?";
}

inline const char* table_label(Algorithm a) {
  switch (a) {
    case Algorithm::kGreedy: return "G";
    case Algorithm::kRR: return "RR";
    case Algorithm::kBRR: return "BRR";
  }
  return "?";
}

struct Grid {
  std::vector<int> stations{1, 5, 10};
  std::vector<int> ratios{1, 2};
  int trials = 10;
  std::uint64_t seed = 1;
  int horizon = 24;
  int boost_repeats = 10;
};

struct ResultRow {
  int stations = 0;
  int ratio = 0;
  Algorithm algorithm = Algorithm::kGreedy;
  /// Mean over successful trials; NaN when every trial failed.
  double mean_ratio = std::numeric_limits<double>::quiet_NaN();
  /// "exact", "lp", "relaxed" or "mixed" across trials.
  std::string denominator;
  int trials = 0;
  int failures = 0;
  double mean_seconds = 0.0;
  double max_seconds = 0.0;
  /// Per-trial ratio, NaN for a failed trial.
  std::vector<double> trial_ratios;
};

namespace detail {

inline double safe_ratio(double reward, double reference) {
  if (reference <= 0.0) return 1.0;
  return reward / reference;
}

}  // namespace detail

/// Runs every algorithm on `trials` generated instances per (n, R) cell.
/// Per-trial failures (refused LP, solver error) are counted, not fatal.
/// Rows come back sorted by (R, n, algorithm).
inline std::vector<ResultRow> run_experiment(const Grid& grid,
                                             const std::vector<Algorithm>& algorithms,
                                             const OraclePolicy& policy = {}) {
  using Clock = std::chrono::steady_clock;
  std::vector<ResultRow> rows;
  for (int ratio : grid.ratios) {
    for (int n : grid.stations) {
      GenConfig cfg{n, ratio, grid.horizon, grid.seed, grid.trials};
      validate(cfg);
      std::vector<ResultRow> cell;
      for (auto a : algorithms) {
        ResultRow row;
        row.stations = n;
        row.ratio = ratio;
        row.algorithm = a;
        row.trials = grid.trials;
        cell.push_back(std::move(row));
      }
      std::vector<std::set<std::string>> kinds(algorithms.size());
      for (int trial = 0; trial < grid.trials; ++trial) {
        const Instance inst = generate_instance(cfg, trial);
        const auto rr_seed = trial_rng(cfg, trial, 1)();
        std::optional<FractionalSolution> lp;
        std::string lp_error;
        double lp_seconds = 0.0;
        const LPModel model = build_lp_relaxation(inst);
        if (model.num_vars() <= policy.lp_max_vars || policy.allow_large_lp) {
          const auto t0 = Clock::now();
          try {
            lp = solve_lp(model);
          } catch (const ValetError& e) {
            lp_error = e.what();
          }
          lp_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        } else {
          lp_error = "LP has " + std::to_string(model.num_vars()) +
                     " variables, above the cap";
        }
        const Reference ref =
            reference_value(inst, policy, lp ? &lp->objective : nullptr);

        for (std::size_t q = 0; q < algorithms.size(); ++q) {
          auto& row = cell[q];
          const auto t0 = Clock::now();
          double reward = std::numeric_limits<double>::quiet_NaN();
          try {
            switch (algorithms[q]) {
              case Algorithm::kGreedy:
                reward = greedy_schedule(inst).total_reward();
                break;
              case Algorithm::kRR:
                if (!lp) throw RefusedError(lp_error);
                reward = randomized_rounding(inst, *lp, rr_seed).total_reward();
                break;
              case Algorithm::kBRR:
                if (!lp) throw RefusedError(lp_error);
                reward = boosted_rr(inst, *lp, grid.boost_repeats, rr_seed)
                             .total_reward();
                break;
            }
          } catch (const ValetError&) {
            reward = std::numeric_limits<double>::quiet_NaN();
          }
          double secs = std::chrono::duration<double>(Clock::now() - t0).count();
          if (algorithms[q] != Algorithm::kGreedy) secs += lp_seconds;
          row.mean_seconds += secs / grid.trials;
          row.max_seconds = std::max(row.max_seconds, secs);
          if (std::isnan(reward)) {
            ++row.failures;
            row.trial_ratios.push_back(reward);
            continue;
          }
          row.trial_ratios.push_back(detail::safe_ratio(reward, ref.value));
          kinds[q].insert(to_string(ref.kind));
        }
      }
      for (std::size_t q = 0; q < algorithms.size(); ++q) {
        auto& row = cell[q];
        double sum = 0.0;
        int ok = 0;
        for (double r : row.trial_ratios) {
          if (std::isnan(r)) continue;
          sum += r;
          ++ok;
        }
        if (ok > 0) row.mean_ratio = sum / ok;
        row.denominator = kinds[q].empty()      ? "none"
                          : kinds[q].size() > 1 ? "mixed"
                                                : *kinds[q].begin();
        rows.push_back(std::move(row));
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::tie(a.ratio, a.stations, a.algorithm) <
           std::tie(b.ratio, b.stations, b.algorithm);
  });
  return rows;
}

// ---------------------------------------------------------------------------
// Output

enum class Format { kCsv, kMarkdown };

namespace detail {

inline std::string fixed(double v, int digits) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace detail

/// Columns: R, n, algorithm, ratio, denominator, trials. Timing is left out
/// so identical runs produce identical bytes.
inline std::string emit_csv(const std::vector<ResultRow>& rows) {
  std::string out = "R,n,algorithm,ratio,denominator,trials\n";
  for (const auto& r : rows) {
    out += std::to_string(r.ratio) + "," + std::to_string(r.stations) + "," +
           to_string(r.algorithm) + "," + detail::fixed(r.mean_ratio, 9) + "," +
           r.denominator + "," + std::to_string(r.trials) + "\n";
  }
  return out;
}

/// One table per R, columns per n (starred when the denominator was the
/// exact optimum for every trial), one line per algorithm.
inline std::string emit_markdown(const std::vector<ResultRow>& rows) {
  std::map<int, std::vector<const ResultRow*>> by_ratio;
  for (const auto& r : rows) by_ratio[r.ratio].push_back(&r);
  std::string out;
  for (const auto& [ratio, group] : by_ratio) {
    std::vector<int> ns;
    std::vector<Algorithm> algs;
    std::map<std::pair<int, Algorithm>, const ResultRow*> cell;
    std::map<int, bool> exact;
    for (const auto* r : group) {
      if (std::find(ns.begin(), ns.end(), r->stations) == ns.end()) {
        ns.push_back(r->stations);
      }
      if (std::find(algs.begin(), algs.end(), r->algorithm) == algs.end()) {
        algs.push_back(r->algorithm);
      }
      cell[{r->stations, r->algorithm}] = r;
      auto [it, fresh] = exact.emplace(r->stations, true);
      if (r->denominator != "exact") it->second = false;
    }
    std::sort(ns.begin(), ns.end());
    std::sort(algs.begin(), algs.end());
    if (!out.empty()) out += "\n";
    out += "| R=" + std::to_string(ratio) + " |";
    for (int n : ns) out += " " + std::to_string(n) + (exact[n] ? "*" : "") + " |";
    out += "\n|---|";
    for (std::size_t q = 0; q < ns.size(); ++q) out += "---|";
    out += "\n";
    for (auto a : algs) {
      out += std::string("| ") + table_label(a) + " |";
      for (int n : ns) {
        auto it = cell.find({n, a});
        out += " " + (it == cell.end() || std::isnan(it->second->mean_ratio)
                          ? std::string("n/a")
                          : detail::fixed(it->second->mean_ratio, 3)) +
               " |";
      }
      out += "\n";
    }
  }
  return out;
}

inline std::string emit_results(const std::vector<ResultRow>& rows, Format f) {
  if (rows.empty()) throw std::invalid_argument("emit_results: no rows");
  return f == Format::kCsv ? emit_csv(rows) : emit_markdown(rows);
}

inline Algorithm parse_algorithm(std::string_view s) {
  if (s == "greedy") return Algorithm::kGreedy;
  if (s == "rr") return Algorithm::kRR;
  if (s == "brr") return Algorithm::kBRR;
  throw std::invalid_argument("unknown algorithm: " + std::string(s));
}

/// Inverse of emit_csv for the emitted columns.
inline std::vector<ResultRow> parse_results_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "R,n,algorithm,ratio,denominator,trials") {
    throw ParseError("results CSV: unexpected header", 0);
  }
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    if (f.size() != 6) throw ParseError("results CSV: expected 6 fields", 0);
    ResultRow r;
    r.ratio = std::stoi(f[0]);
    r.stations = std::stoi(f[1]);
    r.algorithm = parse_algorithm(f[2]);
    r.mean_ratio = f[3] == "nan" ? std::numeric_limits<double>::quiet_NaN()
                                 : std::stod(f[3]);
    r.denominator = f[4];
    r.trials = std::stoi(f[5]);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace evvalet::bench

#endif  // EVVALET_BENCH_HPP

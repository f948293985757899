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

// Exact solvers: an exhaustive oracle for small instances and polynomial
// algorithms for the tractable special cases (zero charge time, a single
// vehicle, a constant number of vehicles, homogeneous vehicles).
//
// All dynamic programs track per-vehicle recharge counters: after a
// discharge at t the counter at t+1 equals the charge time, it drops by one
// per slot, and the vehicle may discharge again once it reaches zero. A
// counter never needs to exceed the horizon, so charge times are clamped to
// T when states are encoded.

#ifndef EVVALET_EXACT_HPP
#define EVVALET_EXACT_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "evvalet/core.hpp"
#include "evvalet/error.hpp"
#include "evvalet/lp.hpp"
#include "evvalet/matching.hpp"

namespace evvalet {

namespace detail {

constexpr double kTieEps = 1e-12;

inline int clamped_charge(const Instance& inst, int i) {
  return std::min(inst.vehicles[i].charge_time, inst.horizon);
}

/// Prefix sums of the positive rewards at t in decreasing order:
/// prefix[k] is the best total for k vehicles at time t.
inline std::vector<double> top_reward_prefix(const Instance& inst, int t,
                                             const std::vector<int>& order) {
  std::vector<double> prefix(order.size() + 1, 0.0);
  for (std::size_t k = 0; k < order.size(); ++k) {
    prefix[k + 1] = prefix[k] + inst.reward(order[k], t);
  }
  return prefix;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Exhaustive oracle

struct BruteForceLimits {
  int max_vehicles = 4;
  int max_stations = 3;
  int max_horizon = 10;
  /// Distinct memoized (time, counters) states before the search refuses.
  std::size_t max_states = 5'000'000;
};

/// Maximum-reward schedule by exhaustive search over every joint choice per
/// time slot (each eligible vehicle idles or takes any free station with
/// positive reward), memoized on (time, recharge counters).
///
/// Ties resolve to the first optimal choice in enumeration order: vehicles
/// ascending, idling before discharging, stations ascending.
inline Schedule brute_force_opt(const Instance& inst,
                                const BruteForceLimits& limits = {}) {
  const int m = inst.num_vehicles();
  const int n = inst.num_stations;
  const int horizon = inst.horizon;
  if (m > limits.max_vehicles || n > limits.max_stations ||
      horizon > limits.max_horizon) {
    throw RefusedError("brute_force_opt: instance exceeds limits (m=" +
                       std::to_string(m) + ", n=" + std::to_string(n) +
                       ", T=" + std::to_string(horizon) + ")");
  }
  const std::uint64_t radix = static_cast<std::uint64_t>(horizon) + 1;
  auto encode = [&](int t, const std::vector<int>& r) {
    std::uint64_t key = static_cast<std::uint64_t>(t);
    for (int c : r) key = key * radix + static_cast<std::uint64_t>(c);
    return key;
  };

  // Calls visit(reward, choice) for every joint choice at time t given
  // counters r. `choice` lists (vehicle, station) pairs.
  using Choice = std::vector<std::pair<int, int>>;
  auto for_each_choice = [&](int t, const std::vector<int>& r,
                             const std::function<void(double, const Choice&)>&
                                 visit) {
    std::vector<int> eligible;
    for (int i = 0; i < m; ++i) {
      if (r[i] == 0 && inst.vehicles[i].available_at(t)) eligible.push_back(i);
    }
    std::vector<char> taken(n, 0);
    Choice choice;
    std::function<void(std::size_t, double)> rec = [&](std::size_t k,
                                                       double reward) {
      if (k == eligible.size()) {
        visit(reward, choice);
        return;
      }
      rec(k + 1, reward);
      for (int j = 0; j < n; ++j) {
        const double p = inst.reward(j, t);
        if (taken[j] || p <= 0.0) continue;
        taken[j] = 1;
        choice.emplace_back(eligible[k], j);
        rec(k + 1, reward + p);
        choice.pop_back();
        taken[j] = 0;
      }
    };
    rec(0, 0.0);
  };
  auto advance = [&](const std::vector<int>& r, const Choice& choice) {
    std::vector<int> next(m);
    for (int i = 0; i < m; ++i) next[i] = std::max(r[i] - 1, 0);
    for (auto [i, j] : choice) next[i] = detail::clamped_charge(inst, i);
    return next;
  };

  std::unordered_map<std::uint64_t, double> memo;
  std::function<double(int, const std::vector<int>&)> value =
      [&](int t, const std::vector<int>& r) -> double {
    if (t > horizon) return 0.0;
    const auto key = encode(t, r);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    double best = 0.0;
    bool first = true;
    for_each_choice(t, r, [&](double reward, const Choice& choice) {
      const double v = reward + value(t + 1, advance(r, choice));
      if (first || v > best + detail::kTieEps) {
        best = v;
        first = false;
      }
    });
    if (memo.size() >= limits.max_states) {
      throw RefusedError("brute_force_opt: state limit exceeded");
    }
    memo.emplace(key, best);
    return best;
  };

  std::vector<int> r(m, 0);
  std::vector<Assignment> out;
  for (int t = 1; t <= horizon; ++t) {
    const double target = value(t, r);
    Choice picked;
    bool found = false;
    for_each_choice(t, r, [&](double reward, const Choice& choice) {
      if (found) return;
      const double v = reward + value(t + 1, advance(r, choice));
      if (v >= target - 1e-9) {
        picked = choice;
        found = true;
      }
    });
    for (auto [i, j] : picked) out.push_back({i, j, t});
    r = advance(r, picked);
  }
  return Schedule(inst, std::move(out));
}

// ---------------------------------------------------------------------------
// Zero charging time

/// Optimal schedule when every charge time is zero. Slots decouple, so each
/// time t is an independent maximum-weight bipartite matching between the
/// vehicles available at t and the stations.
inline Schedule solve_zero_charge(const Instance& inst) {
  for (const auto& v : inst.vehicles) {
    if (v.charge_time != 0) {
      throw RefusedError("solve_zero_charge: requires every charge_time == 0");
    }
  }
  std::vector<Assignment> out;
  for (int t = 1; t <= inst.horizon; ++t) {
    std::vector<int> present;
    for (int i = 0; i < inst.num_vehicles(); ++i) {
      if (inst.vehicles[i].available_at(t)) present.push_back(i);
    }
    if (present.empty()) continue;
    std::vector<std::vector<double>> weight(
        present.size(), std::vector<double>(inst.num_stations));
    for (std::size_t l = 0; l < present.size(); ++l) {
      for (int j = 0; j < inst.num_stations; ++j) weight[l][j] = inst.reward(j, t);
    }
    for (auto [l, j] : max_weight_bipartite_matching(weight)) {
      out.push_back({present[l], j, t});
    }
  }
  return Schedule(inst, std::move(out));
}

// ---------------------------------------------------------------------------
// Single vehicle

/// Single-station copy of a single-vehicle instance holding, at each time,
/// the best reward over all stations. `station_of[t]` maps back.
struct CollapsedInstance {
  Instance instance;
  std::vector<int> station_of;  // indexed by time, entry 0 unused
};

inline CollapsedInstance collapse_to_best_station(const Instance& inst) {
  CollapsedInstance out;
  out.instance.horizon = inst.horizon;
  out.instance.num_stations = 1;
  out.instance.vehicles = inst.vehicles;
  out.instance.rewards.assign(1, std::vector<double>(inst.horizon));
  out.station_of.assign(inst.horizon + 1, 0);
  for (int t = 1; t <= inst.horizon; ++t) {
    auto [p, j] = best_station(inst, t);
    out.instance.rewards[0][t - 1] = p;
    out.station_of[t] = j;
  }
  return out;
}

/// One-dimensional DP over time on the best-station collapse:
/// best(t) = max(best(t+1), p_t + best(t + C + 1)) for t in T_1, p_t > 0.
inline Schedule solve_single_vehicle(const Instance& inst) {
  if (inst.num_vehicles() != 1) {
    throw RefusedError("solve_single_vehicle: requires exactly one vehicle");
  }
  const auto& veh = inst.vehicles[0];
  const int horizon = inst.horizon;
  const int stride = detail::clamped_charge(inst, 0) + 1;
  std::vector<double> best(horizon + stride + 2, 0.0);
  std::vector<char> take(horizon + 2, 0);
  for (int t = horizon; t >= 1; --t) {
    best[t] = best[t + 1];
    if (!veh.available_at(t)) continue;
    const double p = best_station(inst, t).first;
    if (p <= 0.0) continue;
    const double cand = p + best[t + stride];
    if (cand > best[t] + detail::kTieEps) {
      best[t] = cand;
      take[t] = 1;
    }
  }
  std::vector<Assignment> out;
  for (int t = 1; t <= horizon;) {
    if (take[t]) {
      out.push_back({0, best_station(inst, t).second, t});
      t += stride;
    } else {
      ++t;
    }
  }
  return Schedule(inst, std::move(out));
}

/// LP route for one vehicle: collapse stations, solve the relaxation and
/// round. The relaxation is expected to be integral; a fractional optimum is
/// reported as a SolverError rather than rounded.
inline Schedule solve_single_vehicle_lp(const Instance& inst) {
  if (inst.num_vehicles() != 1) {
    throw RefusedError("solve_single_vehicle_lp: requires exactly one vehicle");
  }
  const auto collapsed = collapse_to_best_station(inst);
  const auto sol = solve_lp(build_lp_relaxation(collapsed.instance));
  if (!check_integrality(sol)) {
    throw SolverError("solve_single_vehicle_lp: fractional LP optimum");
  }
  const auto rounded = round_integral(sol, collapsed.instance);
  std::vector<Assignment> out;
  for (const auto& a : rounded.assignments()) {
    out.push_back({0, collapsed.station_of[a.time], a.time});
  }
  return Schedule(inst, std::move(out));
}

// ---------------------------------------------------------------------------
// Constant number of vehicles

struct ConstantMOptions {
  int max_vehicles = 4;
  /// Upper bound on T * prod_i (min(C_i, T) + 1) table entries.
  std::size_t max_states = 20'000'000;
};

/// Number of DP table entries solve_constant_m would allocate.
inline double constant_m_table_size(const Instance& inst) {
  double size = inst.horizon;
  for (int i = 0; i < inst.num_vehicles(); ++i) {
    size *= detail::clamped_charge(inst, i) + 1;
  }
  return size;
}

/// Backward DP over (t, r_1..r_m). At each state the eligible vehicles
/// (counter zero, available at t) are split into a discharging subset S and
/// the rest; S takes the |S| best positive rewards at t. Subsets are tried
/// in increasing bitmask order, first optimum wins.
inline Schedule solve_constant_m(const Instance& inst,
                                 const ConstantMOptions& opt = {}) {
  const int m = inst.num_vehicles();
  const int horizon = inst.horizon;
  if (m > opt.max_vehicles) {
    throw RefusedError("solve_constant_m: " + std::to_string(m) +
                       " vehicles exceeds cap " +
                       std::to_string(opt.max_vehicles));
  }
  if (constant_m_table_size(inst) > static_cast<double>(opt.max_states)) {
    throw RefusedError("solve_constant_m: DP table too large");
  }
  std::vector<int> radix(m);
  std::vector<std::size_t> weight(m);
  std::size_t states = 1;
  for (int i = m - 1; i >= 0; --i) {
    radix[i] = detail::clamped_charge(inst, i) + 1;
    weight[i] = states;
    states *= static_cast<std::size_t>(radix[i]);
  }
  auto decode = [&](std::size_t s, std::vector<int>& r) {
    for (int i = 0; i < m; ++i) r[i] = static_cast<int>((s / weight[i]) % radix[i]);
  };

  std::vector<std::vector<int>> order(horizon + 1);
  std::vector<std::vector<double>> prefix(horizon + 1);
  for (int t = 1; t <= horizon; ++t) {
    order[t] = positive_stations_by_reward(inst, t);
    prefix[t] = detail::top_reward_prefix(inst, t, order[t]);
  }

  // Eligible vehicles at (t, r) and the successor for a subset mask over
  // them. Bit k of mask selects eligible[k].
  auto eligible_of = [&](int t, const std::vector<int>& r) {
    std::vector<int> e;
    for (int i = 0; i < m; ++i) {
      if (r[i] == 0 && inst.vehicles[i].available_at(t)) e.push_back(i);
    }
    return e;
  };
  auto successor = [&](const std::vector<int>& r, const std::vector<int>& e,
                       unsigned mask) {
    std::size_t s = 0;
    for (int i = 0; i < m; ++i) {
      s += static_cast<std::size_t>(std::max(r[i] - 1, 0)) * weight[i];
    }
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (mask >> k & 1u) s += static_cast<std::size_t>(radix[e[k]] - 1) * weight[e[k]];
    }
    return s;
  };

  // value[t][s]; row horizon+1 is all zero.
  std::vector<std::vector<double>> value(
      horizon + 2, std::vector<double>(states, 0.0));
  std::vector<int> r(m);
  for (int t = horizon; t >= 1; --t) {
    for (std::size_t s = 0; s < states; ++s) {
      decode(s, r);
      const auto e = eligible_of(t, r);
      const std::size_t cap = order[t].size();
      double best = -1.0;
      for (unsigned mask = 0; mask < (1u << e.size()); ++mask) {
        const auto k = static_cast<std::size_t>(__builtin_popcount(mask));
        if (k > cap) continue;
        const double v = prefix[t][k] + value[t + 1][successor(r, e, mask)];
        if (v > best + detail::kTieEps) best = v;
      }
      value[t][s] = best;
    }
  }

  std::vector<Assignment> out;
  std::size_t s = 0;
  for (int t = 1; t <= horizon; ++t) {
    decode(s, r);
    const auto e = eligible_of(t, r);
    for (unsigned mask = 0; mask < (1u << e.size()); ++mask) {
      const auto k = static_cast<std::size_t>(__builtin_popcount(mask));
      if (k > order[t].size()) continue;
      const std::size_t next = successor(r, e, mask);
      if (prefix[t][k] + value[t + 1][next] >= value[t][s] - 1e-9) {
        std::size_t slot = 0;
        for (std::size_t b = 0; b < e.size(); ++b) {
          if (mask >> b & 1u) out.push_back({e[b], order[t][slot++], t});
        }
        s = next;
        break;
      }
    }
  }
  return Schedule(inst, std::move(out));
}

// ---------------------------------------------------------------------------
// Homogeneous vehicles

struct HomogeneousOptions {
  int max_charge_time = 8;
  std::size_t max_states = 5'000'000;
};

inline bool is_homogeneous(const Instance& inst) {
  for (const auto& v : inst.vehicles) {
    if (v.charge_time != inst.vehicles.front().charge_time ||
        v.availability != inst.vehicles.front().availability) {
      return false;
    }
  }
  return true;
}

/// DP over (t, r_0..r_C) where r_l counts vehicles that become available in
/// l slots. Discharging k of the r_0 ready vehicles at t collects the top-k
/// positive rewards and moves to (r_0 + r_1 - k, r_2, ..., r_C, k).
/// Vehicle identities are handed out round-robin when the schedule is
/// rebuilt.
inline Schedule solve_homogeneous(const Instance& inst,
                                  const HomogeneousOptions& opt = {}) {
  if (!is_homogeneous(inst)) {
    throw RefusedError(
        "solve_homogeneous: vehicles must share availability and charge_time");
  }
  const int m = inst.num_vehicles();
  const int horizon = inst.horizon;
  const int c = detail::clamped_charge(inst, 0);
  if (c > opt.max_charge_time) {
    throw RefusedError("solve_homogeneous: charge_time " + std::to_string(c) +
                       " exceeds cap " + std::to_string(opt.max_charge_time));
  }
  const auto& common = inst.vehicles.front();

  std::vector<std::vector<int>> order(horizon + 1);
  std::vector<std::vector<double>> prefix(horizon + 1);
  for (int t = 1; t <= horizon; ++t) {
    order[t] = positive_stations_by_reward(inst, t);
    prefix[t] = detail::top_reward_prefix(inst, t, order[t]);
  }
  auto max_k = [&](int t, const std::vector<int>& r) {
    if (!common.available_at(t)) return 0;
    return std::min(r[0], static_cast<int>(order[t].size()));
  };
  auto shift = [&](const std::vector<int>& r, int k) {
    if (c == 0) return r;
    std::vector<int> next(c + 1);
    next[0] = r[0] + r[1] - k;
    for (int l = 1; l < c; ++l) next[l] = r[l + 1];
    next[c] = k;
    return next;
  };

  std::map<std::pair<int, std::vector<int>>, double> memo;
  std::function<double(int, const std::vector<int>&)> value =
      [&](int t, const std::vector<int>& r) -> double {
    if (t > horizon) return 0.0;
    auto key = std::make_pair(t, r);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    double best = -1.0;
    for (int k = 0; k <= max_k(t, r); ++k) {
      const double v = prefix[t][k] + value(t + 1, shift(r, k));
      if (v > best + detail::kTieEps) best = v;
    }
    if (memo.size() >= opt.max_states) {
      throw RefusedError("solve_homogeneous: state limit exceeded");
    }
    memo.emplace(std::move(key), best);
    return best;
  };

  std::vector<int> r(c + 1, 0);
  r[0] = m;
  value(1, r);

  std::vector<int> counter(m, 0);
  int cursor = 0;
  std::vector<Assignment> out;
  for (int t = 1; t <= horizon; ++t) {
    const double target = value(t, r);
    int k = 0;
    for (; k <= max_k(t, r); ++k) {
      if (prefix[t][k] + value(t + 1, shift(r, k)) >= target - 1e-9) break;
    }
    std::vector<int> chosen;
    for (int step = 0; step < m && static_cast<int>(chosen.size()) < k; ++step) {
      const int i = (cursor + step) % m;
      if (counter[i] == 0) chosen.push_back(i);
    }
    if (!chosen.empty()) cursor = (chosen.back() + 1) % m;
    for (int i = 0; i < m; ++i) counter[i] = std::max(counter[i] - 1, 0);
    for (std::size_t q = 0; q < chosen.size(); ++q) {
      out.push_back({chosen[q], order[t][q], t});
      counter[chosen[q]] = c;
    }
    r = shift(r, k);
  }
  return Schedule(inst, std::move(out));
}

}  // namespace evvalet

#endif  // EVVALET_EXACT_HPP

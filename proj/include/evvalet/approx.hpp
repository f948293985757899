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

// Approximation algorithms: the 1/3-approximate greedy and LP-based
// randomized rounding with strip packing, plus its best-of-k variant.

#ifndef EVVALET_APPROX_HPP
#define EVVALET_APPROX_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "evvalet/core.hpp"
#include "evvalet/error.hpp"
#include "evvalet/lp.hpp"

namespace evvalet {

// ---------------------------------------------------------------------------
// Greedy

/// Vehicle-dependent rewards p(i, j, t), dense over m x n x T.
class VehicleRewards {
 public:
  VehicleRewards(int vehicles, int stations, int horizon)
      : stations_(stations),
        horizon_(horizon),
        values_(static_cast<std::size_t>(vehicles) * stations * horizon, 0.0) {}

  /// Broadcasts the station-time rewards of `inst` to every vehicle.
  static VehicleRewards from_instance(const Instance& inst) {
    VehicleRewards out(inst.num_vehicles(), inst.num_stations, inst.horizon);
    for (int i = 0; i < inst.num_vehicles(); ++i) {
      for (int j = 0; j < inst.num_stations; ++j) {
        for (int t = 1; t <= inst.horizon; ++t) out.at(i, j, t) = inst.reward(j, t);
      }
    }
    return out;
  }

  double& at(int i, int j, int t) { return values_[index(i, j, t)]; }
  double at(int i, int j, int t) const { return values_[index(i, j, t)]; }

 private:
  std::size_t index(int i, int j, int t) const {
    return (static_cast<std::size_t>(i) * stations_ + j) * horizon_ + (t - 1);
  }
  int stations_;
  int horizon_;
  std::vector<double> values_;
};

namespace detail {

/// Committed discharge times per vehicle plus used (station, time) slots.
class GreedyState {
 public:
  explicit GreedyState(const Instance& inst)
      : inst_(inst),
        times_(inst.num_vehicles()),
        used_(static_cast<std::size_t>(inst.num_stations) * (inst.horizon + 1), 0) {}

  bool compatible(int i, int j, int t) const {
    if (used_[slot(j, t)]) return false;
    const int c = inst_.vehicles[i].charge_time;
    for (int u : times_[i]) {
      if (std::abs(u - t) <= c) return false;
    }
    return true;
  }

  void commit(int i, int j, int t) {
    used_[slot(j, t)] = 1;
    times_[i].push_back(t);
    picked_.push_back({i, j, t});
  }

  std::vector<Assignment> take() { return std::move(picked_); }

 private:
  std::size_t slot(int j, int t) const {
    return static_cast<std::size_t>(j) * (inst_.horizon + 1) + t;
  }
  const Instance& inst_;
  std::vector<std::vector<int>> times_;
  std::vector<char> used_;
  std::vector<Assignment> picked_;
};

}  // namespace detail

/// Greedy on station-time rewards. Repeatedly commits the best remaining
/// triple, ordered by reward descending then (t, j, i) ascending, and drops
/// every triple that conflicts with it. Only positive rewards are eligible.
///
/// All triples of one (j, t) pair share a reward and are adjacent in that
/// order, so the loop walks (j, t) pairs and hands each one to the lowest
/// indexed vehicle that can still take it.
inline Schedule greedy_schedule(const Instance& inst) {
  std::vector<std::tuple<double, int, int>> pairs;  // (reward, t, j)
  for (int t = 1; t <= inst.horizon; ++t) {
    for (int j = 0; j < inst.num_stations; ++j) {
      if (inst.reward(j, t) > 0.0) pairs.emplace_back(inst.reward(j, t), t, j);
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    return std::tie(std::get<1>(a), std::get<2>(a)) <
           std::tie(std::get<1>(b), std::get<2>(b));
  });
  std::vector<std::vector<int>> present(inst.horizon + 1);
  for (int i = 0; i < inst.num_vehicles(); ++i) {
    for (int t : inst.vehicles[i].availability) present[t].push_back(i);
  }
  detail::GreedyState state(inst);
  for (const auto& [p, t, j] : pairs) {
    for (int i : present[t]) {
      if (state.compatible(i, j, t)) {
        state.commit(i, j, t);
        break;
      }
    }
  }
  return Schedule(inst, state.take());
}

/// Greedy with vehicle-dependent rewards. Same ordering and conflict rules
/// as above, over explicit (i, j, t) triples. The returned schedule caches
/// the station-time reward; use overlay_reward for the overlay total.
inline Schedule greedy_schedule(const Instance& inst,
                                const VehicleRewards& overlay) {
  struct Triple {
    double reward;
    int t, j, i;
  };
  std::vector<Triple> live;
  for (int i = 0; i < inst.num_vehicles(); ++i) {
    for (int t : inst.vehicles[i].availability) {
      for (int j = 0; j < inst.num_stations; ++j) {
        const double p = overlay.at(i, j, t);
        if (p > 0.0) live.push_back({p, t, j, i});
      }
    }
  }
  std::sort(live.begin(), live.end(), [](const Triple& a, const Triple& b) {
    if (a.reward != b.reward) return a.reward > b.reward;
    return std::tie(a.t, a.j, a.i) < std::tie(b.t, b.j, b.i);
  });
  detail::GreedyState state(inst);
  for (const auto& tr : live) {
    if (state.compatible(tr.i, tr.j, tr.t)) state.commit(tr.i, tr.j, tr.t);
  }
  return Schedule(inst, state.take());
}

inline double overlay_reward(const Schedule& sched,
                             const VehicleRewards& overlay) {
  double total = 0.0;
  for (const auto& a : sched.assignments()) {
    total += overlay.at(a.vehicle, a.station, a.time);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Strip packing

/// One horizontal band of a (j, t) rectangle. The x-extent is always
/// [time, time + charge_time + 1); the y-extent is [lo, hi).
struct Slice {
  int station;
  int time;
  double lo;
  double hi;

  double height() const { return hi - lo; }
};

struct Packing {
  int vehicle = 0;
  int charge_time = 0;
  int horizon = 0;
  std::vector<Slice> slices;

  int x_begin(const Slice& s) const { return s.time; }
  int x_end(const Slice& s) const { return s.time + charge_time + 1; }
};

/// Height above 1 tolerated in the strip, matching the LP feasibility
/// tolerance on the recharge-window rows.
inline constexpr double kStripSlack = 1e-6;

/// Lays the vehicle's fractional values out as rectangles of width C+1 in
/// the [1, T+1] x [0, 1] strip, in order of (t, j). A rectangle goes into
/// the lowest free gap tall enough to hold it; otherwise it is cut into
/// horizontal slices that fill the free gaps bottom-up.
inline Packing pack_rectangles(int vehicle,
                               std::span<const FractionalEntry> entries,
                               int charge_time, int horizon) {
  Packing pack{vehicle, charge_time, horizon, {}};
  std::vector<FractionalEntry> todo;
  for (const auto& e : entries) {
    if (e.key.vehicle != vehicle) {
      throw std::invalid_argument("pack_rectangles: entry for another vehicle");
    }
    if (e.value > 0.0) todo.push_back(e);
  }
  std::sort(todo.begin(), todo.end(), [](const auto& a, const auto& b) {
    return std::pair(a.key.time, a.key.station) <
           std::pair(b.key.time, b.key.station);
  });

  const double ceiling = 1.0 + kStripSlack;
  std::vector<std::pair<double, double>> busy;
  std::vector<std::pair<double, double>> gaps;
  for (const auto& e : todo) {
    const int t = e.key.time;
    busy.clear();
    for (const auto& s : pack.slices) {
      // Earlier slices start at or before t; they overlap [t, t+C+1) iff
      // they end after t.
      if (pack.x_end(s) > t) busy.emplace_back(s.lo, s.hi);
    }
    std::sort(busy.begin(), busy.end());
    gaps.clear();
    double cursor = 0.0;
    for (auto [lo, hi] : busy) {
      if (lo > cursor) gaps.emplace_back(cursor, lo);
      cursor = std::max(cursor, hi);
    }
    if (cursor < ceiling) gaps.emplace_back(cursor, ceiling);

    const double need = e.value;
    auto fits = std::find_if(gaps.begin(), gaps.end(), [&](const auto& g) {
      return g.second - g.first >= need - 1e-12;
    });
    if (fits != gaps.end()) {
      pack.slices.push_back({e.key.station, t, fits->first, fits->first + need});
      continue;
    }
    double left = need;
    for (auto [lo, hi] : gaps) {
      if (left <= 0.0) break;
      const double h = std::min(hi - lo, left);
      if (h <= 0.0) continue;
      const bool last = h >= left;
      pack.slices.push_back({e.key.station, t, lo, last ? lo + left : hi});
      left = last ? 0.0 : left - h;
    }
    if (left > 1e-12) {
      throw SolverError("pack_rectangles: x-span [" + std::to_string(t) + ", " +
                        std::to_string(t + charge_time + 1) +
                        ") is overfull for vehicle " + std::to_string(vehicle));
    }
  }
  return pack;
}

/// (station, time) origins of every slice crossed by the horizontal line at
/// height y, ordered by time.
inline std::vector<std::pair<int, int>> sample_line(const Packing& pack,
                                                    double y) {
  std::vector<std::pair<int, int>> out;
  for (const auto& s : pack.slices) {
    if (s.lo <= y && y < s.hi) out.emplace_back(s.station, s.time);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::pair(a.second, a.first) < std::pair(b.second, b.first);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline void write_packing(const Packing& pack, std::ostream& os) {
  os << "vehicle " << pack.vehicle + 1 << " charge_time " << pack.charge_time
     << '\n';
  for (const auto& s : pack.slices) {
    os << "  station " << s.station + 1 << " x [" << pack.x_begin(s) << ", "
       << pack.x_end(s) << ") y [" << s.lo << ", " << s.hi << ")\n";
  }
}

// ---------------------------------------------------------------------------
// Randomized rounding

/// splitmix64 finalizer; used to derive independent sub-seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Height of the sampling line for `vehicle` under `seed`.
inline double line_height(std::uint64_t seed, int vehicle) {
  std::mt19937_64 gen(mix_seed(seed ^ mix_seed(static_cast<std::uint64_t>(vehicle) + 1)));
  return std::uniform_real_distribution<double>(0.0, 1.0)(gen);
}

/// Seed of the r-th run in a boosted sequence; run 0 reuses `seed`.
inline std::uint64_t run_seed(std::uint64_t seed, int run) {
  return run == 0 ? seed : mix_seed(seed + static_cast<std::uint64_t>(run));
}

/// Packings of every vehicle for one fractional solution. Packing does not
/// depend on the seed, so one plan serves any number of draws.
class RoundingPlan {
 public:
  RoundingPlan(const Instance& inst, const FractionalSolution& sol)
      : inst_(&inst) {
    if (const double v = lp_violation(sol, inst); v > 1e-6) {
      throw ValetError("randomized_rounding: fractional solution violates the "
                       "relaxation by " + std::to_string(v));
    }
    std::vector<std::vector<FractionalEntry>> per(inst.num_vehicles());
    for (const auto& e : sol.entries) per[e.key.vehicle].push_back(e);
    for (int i = 0; i < inst.num_vehicles(); ++i) {
      packings_.push_back(pack_rectangles(i, per[i],
                                          inst.vehicles[i].charge_time,
                                          inst.horizon));
    }
  }

  const std::vector<Packing>& packings() const { return packings_; }

  /// Per-vehicle picks before station conflicts are resolved.
  std::vector<std::vector<Assignment>> candidates(std::uint64_t seed) const {
    std::vector<std::vector<Assignment>> out(packings_.size());
    for (std::size_t i = 0; i < packings_.size(); ++i) {
      if (packings_[i].slices.empty()) continue;
      const int vi = static_cast<int>(i);
      for (auto [j, t] : sample_line(packings_[i], line_height(seed, vi))) {
        out[i].push_back({vi, j, t});
      }
    }
    return out;
  }

  /// Where several vehicles claim one (j, t), the lowest vehicle index keeps it.
  Schedule sample(std::uint64_t seed) const {
    std::vector<char> used(
        static_cast<std::size_t>(inst_->num_stations) * (inst_->horizon + 1), 0);
    std::vector<Assignment> kept;
    for (const auto& picks : candidates(seed)) {
      for (const auto& a : picks) {
        char& slot = used[static_cast<std::size_t>(a.station) *
                              (inst_->horizon + 1) + a.time];
        if (slot) continue;
        slot = 1;
        kept.push_back(a);
      }
    }
    return Schedule(*inst_, std::move(kept));
  }

 private:
  const Instance* inst_;
  std::vector<Packing> packings_;
};

inline Schedule randomized_rounding(const Instance& inst,
                                    const FractionalSolution& sol,
                                    std::uint64_t seed) {
  return RoundingPlan(inst, sol).sample(seed);
}

/// Best of `repeats` rounding runs with seeds run_seed(seed, 0..repeats-1).
/// The first run to reach the best reward wins ties.
inline Schedule boosted_rr(const Instance& inst, const FractionalSolution& sol,
                           int repeats, std::uint64_t seed) {
  if (repeats < 1) throw std::invalid_argument("boosted_rr: repeats must be >= 1");
  const RoundingPlan plan(inst, sol);
  Schedule best = plan.sample(run_seed(seed, 0));
  for (int r = 1; r < repeats; ++r) {
    Schedule cur = plan.sample(run_seed(seed, r));
    if (cur.total_reward() > best.total_reward()) best = std::move(cur);
  }
  return best;
}

}  // namespace evvalet

#endif  // EVVALET_APPROX_HPP

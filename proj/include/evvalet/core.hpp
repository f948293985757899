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

// Domain model for the valet discharge-scheduling problem.
//
// Indexing convention: vehicles and stations are 0-based positions in their
// containers; times are 1-based, running over 1..horizon. Documents on disk
// use 1-based indices for all three (see io.hpp).

#ifndef EVVALET_CORE_HPP
#define EVVALET_CORE_HPP

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "evvalet/error.hpp"

namespace evvalet {

struct Vehicle {
  /// Times at which the vehicle may be discharged. Strictly increasing.
  std::vector<int> availability;
  /// Slots needed to recharge; a discharge at t blocks [t+1, t+charge_time].
  int charge_time = 0;

  bool available_at(int t) const {
    return std::binary_search(availability.begin(), availability.end(), t);
  }

  friend bool operator==(const Vehicle&, const Vehicle&) = default;
};

struct Instance {
  int horizon = 0;
  int num_stations = 0;
  std::vector<Vehicle> vehicles;
  /// rewards[j][t - 1] is the reward of station j at time t.
  std::vector<std::vector<double>> rewards;

  int num_vehicles() const { return static_cast<int>(vehicles.size()); }
  double reward(int station, int t) const { return rewards[station][t - 1]; }

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Discharge of `vehicle` at `station` during slot `time`.
struct Assignment {
  int vehicle = 0;
  int station = 0;
  int time = 0;

  friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

/// A set of assignments with its cached total reward. Assignments are kept
/// sorted by (vehicle, station, time) and free of duplicates.
class Schedule {
 public:
  Schedule() = default;
  Schedule(const Instance& inst, std::vector<Assignment> assignments)
      : assignments_(std::move(assignments)) {
    std::sort(assignments_.begin(), assignments_.end());
    assignments_.erase(std::unique(assignments_.begin(), assignments_.end()),
                       assignments_.end());
    for (const auto& a : assignments_) {
      if (a.vehicle < 0 || a.vehicle >= inst.num_vehicles() || a.station < 0 ||
          a.station >= inst.num_stations || a.time < 1 ||
          a.time > inst.horizon) {
        throw std::out_of_range("assignment index out of range");
      }
      total_reward_ += inst.reward(a.station, a.time);
    }
  }

  const std::vector<Assignment>& assignments() const { return assignments_; }
  double total_reward() const { return total_reward_; }
  std::size_t size() const { return assignments_.size(); }
  bool empty() const { return assignments_.empty(); }

 private:
  std::vector<Assignment> assignments_;
  double total_reward_ = 0.0;
};

struct Violation {
  std::string where;
  std::string reason;
};

/// Checks every structural invariant of an instance. An empty result means
/// the instance is well-formed.
inline std::vector<Violation> validate_instance(const Instance& inst) {
  std::vector<Violation> out;
  if (inst.horizon < 1) out.push_back({"horizon", "horizon must be >= 1"});
  if (inst.num_stations < 1) {
    out.push_back({"stations", "station count must be >= 1"});
  }
  if (inst.vehicles.empty()) {
    out.push_back({"vehicles", "at least one vehicle required"});
  }
  if (static_cast<int>(inst.rewards.size()) != inst.num_stations) {
    out.push_back({"rewards", "rewards shape: expected " +
                                  std::to_string(inst.num_stations) +
                                  " rows, got " +
                                  std::to_string(inst.rewards.size())});
  }
  for (std::size_t j = 0; j < inst.rewards.size(); ++j) {
    const auto& row = inst.rewards[j];
    if (static_cast<int>(row.size()) != inst.horizon) {
      out.push_back({"rewards[" + std::to_string(j) + "]",
                     "rewards shape: expected " + std::to_string(inst.horizon) +
                         " columns, got " + std::to_string(row.size())});
    }
    for (double p : row) {
      if (!std::isfinite(p)) {
        out.push_back({"rewards[" + std::to_string(j) + "]",
                       "non-finite reward"});
        break;
      }
    }
  }
  for (std::size_t i = 0; i < inst.vehicles.size(); ++i) {
    const auto& v = inst.vehicles[i];
    const std::string where = "vehicles[" + std::to_string(i) + "]";
    if (v.charge_time < 0) out.push_back({where, "negative charge_time"});
    for (std::size_t k = 0; k < v.availability.size(); ++k) {
      const int t = v.availability[k];
      if (t < 1 || t > inst.horizon) {
        out.push_back({where, "time outside 1..T: " + std::to_string(t)});
      }
      if (k > 0 && v.availability[k - 1] >= t) {
        out.push_back({where, "availability not strictly increasing"});
      }
    }
  }
  return out;
}

struct FeasibilityReport {
  bool feasible = true;
  /// First violated constraint, empty when feasible.
  std::string violation;

  explicit operator bool() const { return feasible; }
};

/// Checks station uniqueness, vehicle uniqueness per slot, the recharge gap
/// and availability. Throws std::out_of_range on bad indices.
inline FeasibilityReport is_feasible(std::span<const Assignment> assignments,
                                     const Instance& inst) {
  for (const auto& a : assignments) {
    if (a.vehicle < 0 || a.vehicle >= inst.num_vehicles() || a.station < 0 ||
        a.station >= inst.num_stations || a.time < 1 || a.time > inst.horizon) {
      throw std::out_of_range("assignment index out of range");
    }
  }
  auto describe = [](const Assignment& a) {
    return "(vehicle " + std::to_string(a.vehicle) + ", station " +
           std::to_string(a.station) + ", time " + std::to_string(a.time) + ")";
  };
  for (const auto& a : assignments) {
    if (!inst.vehicles[a.vehicle].available_at(a.time)) {
      return {false, "(d) vehicle not available: " + describe(a)};
    }
  }
  std::vector<Assignment> by_slot(assignments.begin(), assignments.end());
  std::sort(by_slot.begin(), by_slot.end(), [](const auto& x, const auto& y) {
    return std::pair(x.station, x.time) < std::pair(y.station, y.time);
  });
  for (std::size_t k = 1; k < by_slot.size(); ++k) {
    if (by_slot[k].station == by_slot[k - 1].station &&
        by_slot[k].time == by_slot[k - 1].time) {
      return {false, "(a) station used twice: " + describe(by_slot[k - 1]) +
                         " and " + describe(by_slot[k])};
    }
  }
  std::vector<Assignment> by_vehicle(assignments.begin(), assignments.end());
  std::sort(by_vehicle.begin(), by_vehicle.end(),
            [](const auto& x, const auto& y) {
              return std::pair(x.vehicle, x.time) < std::pair(y.vehicle, y.time);
            });
  for (std::size_t k = 1; k < by_vehicle.size(); ++k) {
    const auto& prev = by_vehicle[k - 1];
    const auto& cur = by_vehicle[k];
    if (prev.vehicle != cur.vehicle) continue;
    if (prev.time == cur.time) {
      return {false, "(b) vehicle discharged twice in one slot: " +
                         describe(prev) + " and " + describe(cur)};
    }
    // Sorted by time, so checking neighbours covers every pair.
    if (cur.time <= prev.time + inst.vehicles[cur.vehicle].charge_time) {
      return {false, "(c) recharge window violated: " + describe(prev) +
                         " and " + describe(cur)};
    }
  }
  return {};
}

inline FeasibilityReport is_feasible(const Schedule& sched,
                                     const Instance& inst) {
  return is_feasible(std::span<const Assignment>(sched.assignments()), inst);
}

inline double schedule_reward(std::span<const Assignment> assignments,
                              const Instance& inst) {
  double total = 0.0;
  for (const auto& a : assignments) total += inst.reward(a.station, a.time);
  return total;
}

inline double schedule_reward(const Schedule& sched, const Instance& inst) {
  return schedule_reward(std::span<const Assignment>(sched.assignments()), inst);
}

/// Drops the first `arrival_deficit[i]` available slots of each vehicle and,
/// when `return_full` is set, the last `charge_time` slots so the vehicle
/// leaves recharged. An empty `arrival_deficit` means zero for everyone.
inline Instance prune_availability(const Instance& inst, bool return_full,
                                   std::span<const int> arrival_deficit = {}) {
  if (!arrival_deficit.empty() &&
      static_cast<int>(arrival_deficit.size()) != inst.num_vehicles()) {
    throw std::invalid_argument("arrival_deficit must have one entry per vehicle");
  }
  Instance out = inst;
  for (std::size_t i = 0; i < out.vehicles.size(); ++i) {
    auto& avail = out.vehicles[i].availability;
    const int deficit = arrival_deficit.empty() ? 0 : arrival_deficit[i];
    if (deficit < 0) throw std::invalid_argument("negative arrival deficit");
    const auto size = static_cast<std::ptrdiff_t>(avail.size());
    const std::ptrdiff_t front = std::min<std::ptrdiff_t>(deficit, size);
    const std::ptrdiff_t back =
        return_full ? std::min<std::ptrdiff_t>(out.vehicles[i].charge_time,
                                               size - front)
                    : 0;
    avail = std::vector<int>(avail.begin() + front, avail.end() - back);
  }
  return out;
}

/// Reward of the best station at time t and that station's index (lowest
/// index on ties).
inline std::pair<double, int> best_station(const Instance& inst, int t) {
  double best = inst.reward(0, t);
  int arg = 0;
  for (int j = 1; j < inst.num_stations; ++j) {
    if (inst.reward(j, t) > best) {
      best = inst.reward(j, t);
      arg = j;
    }
  }
  return {best, arg};
}

/// Stations with strictly positive reward at time t, best first. Ties keep
/// the lower station index first.
inline std::vector<int> positive_stations_by_reward(const Instance& inst,
                                                    int t) {
  std::vector<int> out;
  for (int j = 0; j < inst.num_stations; ++j) {
    if (inst.reward(j, t) > 0.0) out.push_back(j);
  }
  std::stable_sort(out.begin(), out.end(), [&](int a, int b) {
    return inst.reward(a, t) > inst.reward(b, t);
  });
  return out;
}

}  // namespace evvalet

#endif  // EVVALET_CORE_HPP

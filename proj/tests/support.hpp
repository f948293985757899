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

// Test-only helpers: small-instance builders, random generators, and an
// optimum by plain subset enumeration that shares no code with the solvers.

#ifndef EVVALET_TESTS_SUPPORT_HPP
#define EVVALET_TESTS_SUPPORT_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "evvalet/core.hpp"

namespace evvalet::testing {

/// One station; vehicles share nothing but the reward row.
inline Instance single_station(std::vector<double> rewards,
                               std::vector<Vehicle> vehicles) {
  Instance inst;
  inst.horizon = static_cast<int>(rewards.size());
  inst.num_stations = 1;
  inst.rewards = {std::move(rewards)};
  inst.vehicles = std::move(vehicles);
  return inst;
}

struct RandomShape {
  int max_vehicles = 3;
  int max_stations = 2;
  int max_horizon = 8;
  int max_charge = 2;
  /// Probability that a reward is drawn negative.
  double negative_share = 0.15;
  double availability_density = 0.6;
};

inline Instance random_instance(std::mt19937_64& rng, const RandomShape& shape,
                                int fixed_vehicles = 0) {
  auto uni = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Instance inst;
  inst.horizon = uni(1, shape.max_horizon);
  inst.num_stations = uni(1, shape.max_stations);
  const int m = fixed_vehicles > 0 ? fixed_vehicles : uni(1, shape.max_vehicles);
  inst.rewards.assign(inst.num_stations, std::vector<double>(inst.horizon));
  for (auto& row : inst.rewards) {
    for (auto& p : row) {
      // Integer-valued rewards give plenty of exact ties.
      p = static_cast<double>(uni(1, 9));
      if (unit(rng) < shape.negative_share) p = -p;
    }
  }
  for (int i = 0; i < m; ++i) {
    Vehicle v;
    v.charge_time = uni(0, shape.max_charge);
    for (int t = 1; t <= inst.horizon; ++t) {
      if (unit(rng) < shape.availability_density) v.availability.push_back(t);
    }
    inst.vehicles.push_back(std::move(v));
  }
  return inst;
}

/// Optimum by enumerating every subset of positive-reward triples and
/// checking the constraints directly. Only for tiny instances.
inline double subset_enumeration_opt(const Instance& inst) {
  struct Triple {
    int i, j, t;
    double p;
  };
  std::vector<Triple> triples;
  for (int i = 0; i < inst.num_vehicles(); ++i) {
    for (int t : inst.vehicles[i].availability) {
      for (int j = 0; j < inst.num_stations; ++j) {
        if (inst.rewards[j][t - 1] > 0) triples.push_back({i, j, t, inst.rewards[j][t - 1]});
      }
    }
  }
  double best = 0.0;
  std::vector<int> picked;
  auto compatible = [&](const Triple& a, const Triple& b) {
    if (a.j == b.j && a.t == b.t) return false;
    if (a.i == b.i) {
      const int gap = a.t > b.t ? a.t - b.t : b.t - a.t;
      if (gap <= inst.vehicles[a.i].charge_time) return false;
    }
    return true;
  };
  std::function<void(std::size_t, double)> rec = [&](std::size_t k, double sum) {
    if (sum > best) best = sum;
    for (std::size_t q = k; q < triples.size(); ++q) {
      bool ok = true;
      for (int idx : picked) {
        if (!compatible(triples[idx], triples[q])) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      picked.push_back(static_cast<int>(q));
      rec(q + 1, sum + triples[q].p);
      picked.pop_back();
    }
  };
  rec(0, 0.0);
  return best;
}

}  // namespace evvalet::testing

#endif  // EVVALET_TESTS_SUPPORT_HPP

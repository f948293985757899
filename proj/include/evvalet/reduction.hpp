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

// Reduction from 3-dimensional matching to valet scheduling.
//
// Given node sets A, B, C of size k and hyperedges (a, b, c), build an
// instance on horizon 4M + k with one vehicle per edge. Vehicle e may
// discharge at {a, 2M+b, 4M+c} (the matching slots) or {M, 3M}; all share
// charge time M + k. Station 0 pays 1 on [1,k], [2M+1, 2M+k], [4M+1, 4M+k];
// |E| - k extra stations pay 1 at M and 3M. Every unit reward can be
// collected exactly when a perfect matching exists.

#ifndef EVVALET_REDUCTION_HPP
#define EVVALET_REDUCTION_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "evvalet/core.hpp"
#include "evvalet/error.hpp"
#include "evvalet/exact.hpp"
#include "evvalet/io.hpp"

namespace evvalet {

/// Hyperedge (a, b, c), each coordinate in 1..k.
using HyperEdge = std::array<int, 3>;

struct ThreeDMInstance {
  int k = 0;
  std::vector<HyperEdge> edges;
};

inline void validate_tdm(const ThreeDMInstance& tdm) {
  if (tdm.k < 1) throw std::invalid_argument("3DM: k must be >= 1");
  for (const auto& e : tdm.edges) {
    for (int v : e) {
      if (v < 1 || v > tdm.k) {
        throw std::invalid_argument("3DM: node index outside 1..k");
      }
    }
  }
}

struct ThreeDMLimits {
  int max_k = 6;
  int max_edges = 24;
};

/// Perfect matching (indices into tdm.edges, ascending) by exhaustive
/// search, or nullopt.
inline std::optional<std::vector<int>> solve_3dm(const ThreeDMInstance& tdm,
                                                 const ThreeDMLimits& limits = {}) {
  validate_tdm(tdm);
  if (tdm.k > limits.max_k ||
      static_cast<int>(tdm.edges.size()) > limits.max_edges) {
    throw RefusedError("solve_3dm: instance exceeds exhaustive-search limits");
  }
  const int k = tdm.k;
  const int e = static_cast<int>(tdm.edges.size());
  std::vector<char> used_a(k + 1, 0), used_b(k + 1, 0), used_c(k + 1, 0);
  std::vector<int> chosen;
  // Every a-node must be covered, so branch on the smallest uncovered a.
  std::function<bool(int)> rec = [&](int a) -> bool {
    if (a > k) return true;
    for (int q = 0; q < e; ++q) {
      const auto& [ea, eb, ec] = tdm.edges[q];
      if (ea != a || used_b[eb] || used_c[ec]) continue;
      used_a[ea] = used_b[eb] = used_c[ec] = 1;
      chosen.push_back(q);
      if (rec(a + 1)) return true;
      chosen.pop_back();
      used_a[ea] = used_b[eb] = used_c[ec] = 0;
    }
    return false;
  };
  if (!rec(1)) return std::nullopt;
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

/// Builds the scheduling instance; requires M >= 2k and |E| >= k.
inline Instance reduce_to_valet(const ThreeDMInstance& tdm, int big_m) {
  validate_tdm(tdm);
  const int k = tdm.k;
  const int e = static_cast<int>(tdm.edges.size());
  if (big_m < 2 * k) {
    throw std::invalid_argument("reduce_to_valet: M must be >= 2k");
  }
  if (e < k) {
    throw std::invalid_argument("reduce_to_valet: need at least k edges");
  }
  Instance inst;
  inst.horizon = 4 * big_m + k;
  inst.num_stations = 1 + (e - k);
  inst.rewards.assign(inst.num_stations, std::vector<double>(inst.horizon, 0.0));
  for (int offset : {0, 2 * big_m, 4 * big_m}) {
    for (int q = 1; q <= k; ++q) inst.rewards[0][offset + q - 1] = 1.0;
  }
  for (int j = 1; j < inst.num_stations; ++j) {
    inst.rewards[j][big_m - 1] = 1.0;
    inst.rewards[j][3 * big_m - 1] = 1.0;
  }
  for (const auto& [a, b, c] : tdm.edges) {
    Vehicle v;
    v.availability = {a, big_m, 2 * big_m + b, 3 * big_m, 4 * big_m + c};
    std::sort(v.availability.begin(), v.availability.end());
    v.charge_time = big_m + k;
    inst.vehicles.push_back(std::move(v));
  }
  return inst;
}

/// Reward available in a reduced instance: 3k + 2(|E| - k).
inline double full_reduction_reward(const ThreeDMInstance& tdm) {
  const int e = static_cast<int>(tdm.edges.size());
  return 3.0 * tdm.k + 2.0 * (e - tdm.k);
}

struct ReductionCheck {
  bool matching_exists = false;
  bool full_reward_achievable = false;
};

/// Decides both sides independently: 3DM by exhaustive search, and the
/// scheduling side by the exhaustive oracle on the reduced instance.
inline ReductionCheck verify_reduction(const ThreeDMInstance& tdm, int big_m) {
  validate_tdm(tdm);
  const int e = static_cast<int>(tdm.edges.size());
  if (tdm.k > 3 || e > 6) {
    throw RefusedError("verify_reduction: requires k <= 3 and |E| <= 6");
  }
  const Instance inst = reduce_to_valet(tdm, big_m);
  BruteForceLimits limits;
  limits.max_vehicles = e;
  limits.max_stations = inst.num_stations;
  limits.max_horizon = inst.horizon;
  const Schedule best = brute_force_opt(inst, limits);
  ReductionCheck out;
  out.matching_exists = solve_3dm(tdm).has_value();
  out.full_reward_achievable =
      std::abs(best.total_reward() - full_reduction_reward(tdm)) <= 1e-9;
  return out;
}

// 3DM document: {"k": k, "edges": [[a, b, c], ...]}

inline std::string save_tdm(const ThreeDMInstance& tdm) {
  return nlohmann::json{{"k", tdm.k}, {"edges", tdm.edges}}.dump(2) + "\n";
}

inline ThreeDMInstance load_tdm(std::string_view text) {
  const auto doc = detail::parse_document(text);
  ThreeDMInstance tdm = detail::with_schema_errors([&] {
    ThreeDMInstance out;
    out.k = doc.at("k").get<int>();
    out.edges = doc.at("edges").get<std::vector<HyperEdge>>();
    return out;
  });
  try {
    validate_tdm(tdm);
  } catch (const std::invalid_argument& ex) {
    throw ParseError(ex.what(), 0);
  }
  return tdm;
}

}  // namespace evvalet

#endif  // EVVALET_REDUCTION_HPP

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

// LP relaxation of the discharge-scheduling integer program.
//
// Variables x(i,j,t) for t in T_i. Two row families, all with right-hand
// side 1:
//   station capacity  sum_i x(i,j,t)                      for each (j,t)
//   recharge window   sum_j sum_{t' in [t, t+C_i]} x(i,j,t') for each i, t in T_i

#ifndef EVVALET_LP_HPP
#define EVVALET_LP_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "evvalet/core.hpp"
#include "evvalet/error.hpp"
#include "evvalet/simplex.hpp"

namespace evvalet {

struct LPRow {
  enum class Kind { kStationCapacity, kRechargeWindow };
  Kind kind;
  /// Station for capacity rows, vehicle for window rows.
  int owner;
  int time;
  std::vector<int> vars;
};

struct LPModel {
  std::vector<Assignment> vars;
  std::vector<double> objective;
  std::vector<LPRow> rows;

  std::size_t num_vars() const { return vars.size(); }
  bool empty() const { return vars.empty(); }
};

struct FractionalEntry {
  Assignment key;
  double value;
};

/// Nonzero LP values sorted by (vehicle, station, time).
struct FractionalSolution {
  std::vector<FractionalEntry> entries;
  double objective = 0.0;
};

/// Variables with non-positive reward are left out unless
/// `include_nonpositive` is set; they cannot raise the optimum.
inline LPModel build_lp_relaxation(const Instance& inst,
                                   bool include_nonpositive = false) {
  LPModel model;
  // Variable index per (i, j, t); -1 when absent.
  const auto slot = [&](int i, int j, int t) {
    return (static_cast<std::size_t>(i) * inst.num_stations + j) *
               (inst.horizon + 1) +
           t;
  };
  std::vector<int> index(static_cast<std::size_t>(inst.num_vehicles()) *
                             inst.num_stations * (inst.horizon + 1),
                         -1);
  for (int i = 0; i < inst.num_vehicles(); ++i) {
    for (int j = 0; j < inst.num_stations; ++j) {
      for (int t : inst.vehicles[i].availability) {
        const double p = inst.reward(j, t);
        if (p <= 0.0 && !include_nonpositive) continue;
        index[slot(i, j, t)] = static_cast<int>(model.vars.size());
        model.vars.push_back({i, j, t});
        model.objective.push_back(p);
      }
    }
  }
  for (int j = 0; j < inst.num_stations; ++j) {
    for (int t = 1; t <= inst.horizon; ++t) {
      LPRow row{LPRow::Kind::kStationCapacity, j, t, {}};
      for (int i = 0; i < inst.num_vehicles(); ++i) {
        if (int k = index[slot(i, j, t)]; k >= 0) row.vars.push_back(k);
      }
      if (!row.vars.empty()) model.rows.push_back(std::move(row));
    }
  }
  for (int i = 0; i < inst.num_vehicles(); ++i) {
    const int c = inst.vehicles[i].charge_time;
    for (int t : inst.vehicles[i].availability) {
      LPRow row{LPRow::Kind::kRechargeWindow, i, t, {}};
      const int last = std::min(t + c, inst.horizon);
      for (int tt = t; tt <= last; ++tt) {
        for (int j = 0; j < inst.num_stations; ++j) {
          if (int k = index[slot(i, j, tt)]; k >= 0) row.vars.push_back(k);
        }
      }
      if (!row.vars.empty()) model.rows.push_back(std::move(row));
    }
  }
  return model;
}

/// Solves the relaxation. Values within 1e-9 of 0 or 1 are snapped and the
/// objective is recomputed from the snapped values.
inline FractionalSolution solve_lp(const LPModel& model,
                                   const simplex::Options& opt = {}) {
  FractionalSolution sol;
  if (model.empty()) return sol;
  std::vector<simplex::SparseRow> rows;
  rows.reserve(model.rows.size());
  for (const auto& r : model.rows) {
    simplex::SparseRow sr;
    sr.rhs = 1.0;
    sr.terms.reserve(r.vars.size());
    for (int k : r.vars) sr.terms.emplace_back(k, 1.0);
    rows.push_back(std::move(sr));
  }
  const auto res = simplex::maximize(model.objective, rows, opt);
  for (std::size_t k = 0; k < model.vars.size(); ++k) {
    double v = res.x[k];
    if (std::abs(v) <= 1e-9) continue;
    if (std::abs(v - 1.0) <= 1e-9) v = 1.0;
    sol.entries.push_back({model.vars[k], v});
    sol.objective += model.objective[k] * v;
  }
  std::sort(sol.entries.begin(), sol.entries.end(),
            [](const auto& a, const auto& b) { return a.key < b.key; });
  return sol;
}

inline FractionalSolution solve_lp(const Instance& inst) {
  return solve_lp(build_lp_relaxation(inst));
}

/// Largest violation of any relaxation constraint (capacity, recharge window,
/// availability, nonnegativity). Zero for a feasible solution.
inline double lp_violation(const FractionalSolution& sol,
                           const Instance& inst) {
  double worst = 0.0;
  std::map<std::pair<int, int>, double> station_load;
  std::vector<std::vector<double>> vehicle_load(
      inst.num_vehicles(), std::vector<double>(inst.horizon + 2, 0.0));
  for (const auto& e : sol.entries) {
    const auto& a = e.key;
    if (a.vehicle < 0 || a.vehicle >= inst.num_vehicles() || a.station < 0 ||
        a.station >= inst.num_stations || a.time < 1 || a.time > inst.horizon) {
      throw std::out_of_range("fractional entry index out of range");
    }
    worst = std::max(worst, -e.value);
    if (!inst.vehicles[a.vehicle].available_at(a.time)) {
      worst = std::max(worst, std::abs(e.value));
    }
    station_load[{a.station, a.time}] += e.value;
    vehicle_load[a.vehicle][a.time] += e.value;
  }
  for (const auto& [key, load] : station_load) {
    worst = std::max(worst, load - 1.0);
  }
  for (int i = 0; i < inst.num_vehicles(); ++i) {
    const int c = inst.vehicles[i].charge_time;
    for (int t : inst.vehicles[i].availability) {
      double sum = 0.0;
      for (int tt = t; tt <= std::min(t + c, inst.horizon); ++tt) {
        sum += vehicle_load[i][tt];
      }
      worst = std::max(worst, sum - 1.0);
    }
  }
  return worst;
}

inline bool check_integrality(const FractionalSolution& sol,
                              double tol = 1e-6) {
  return std::all_of(sol.entries.begin(), sol.entries.end(), [&](const auto& e) {
    return std::abs(e.value) <= tol || std::abs(e.value - 1.0) <= tol;
  });
}

/// Converts an integral LP solution to a schedule. Throws ValetError on a
/// fractional input and SolverError if the result is infeasible.
inline Schedule round_integral(const FractionalSolution& sol,
                               const Instance& inst, double tol = 1e-6) {
  if (!check_integrality(sol, tol)) {
    throw ValetError("round_integral: solution is not integral");
  }
  std::vector<Assignment> picked;
  for (const auto& e : sol.entries) {
    if (std::abs(e.value - 1.0) <= tol) picked.push_back(e.key);
  }
  Schedule sched(inst, std::move(picked));
  if (auto rep = is_feasible(sched, inst); !rep) {
    throw SolverError("round_integral: infeasible result: " + rep.violation);
  }
  return sched;
}

/// Writes the model in CPLEX LP format. Variable x_i_j_t uses 1-based
/// vehicle and station numbers.
inline void write_lp_format(const LPModel& model, std::ostream& os) {
  auto name = [&](int k) {
    const auto& a = model.vars[k];
    return "x_" + std::to_string(a.vehicle + 1) + "_" +
           std::to_string(a.station + 1) + "_" + std::to_string(a.time);
  };
  os.precision(17);
  os << "\\ valet discharge LP relaxation\nMaximize\n obj:";
  if (model.empty()) os << " 0 dummy";
  for (std::size_t k = 0; k < model.vars.size(); ++k) {
    const double c = model.objective[k];
    os << (c < 0 ? " - " : " + ") << std::abs(c) << ' '
       << name(static_cast<int>(k));
  }
  os << "\nSubject To\n";
  for (const auto& r : model.rows) {
    os << (r.kind == LPRow::Kind::kStationCapacity ? " cap_" : " win_")
       << r.owner + 1 << '_' << r.time << ':';
    for (int k : r.vars) os << " + " << name(k);
    os << " <= 1\n";
  }
  os << "End\n";
}

}  // namespace evvalet

#endif  // EVVALET_LP_HPP

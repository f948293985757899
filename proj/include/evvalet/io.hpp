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

// JSON documents for instances and schedules.
//
//   instance: {"horizon": T, "stations": n, "rewards": [[...T values], ...n rows],
//              "vehicles": [{"availability": [t, ...], "charge_time": C}, ...]}
//   schedule: {"assignments": [{"vehicle": i, "station": j, "time": t}, ...],
//              "total_reward": P}
//
// All indices in documents are 1-based.

#ifndef EVVALET_IO_HPP
#define EVVALET_IO_HPP

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "evvalet/core.hpp"
#include "evvalet/error.hpp"

namespace evvalet {

/// Parsed document that violates instance invariants.
class InvalidInstanceError : public ParseError {
 public:
  explicit InvalidInstanceError(std::vector<Violation> violations)
      : ParseError(format(violations), 0), violations_(std::move(violations)) {}
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string format(const std::vector<Violation>& vs) {
    std::string msg = "invalid instance:";
    for (const auto& v : vs) msg += " " + v.where + ": " + v.reason + ";";
    return msg;
  }
  std::vector<Violation> violations_;
};

namespace detail {

inline nlohmann::json parse_document(std::string_view text) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
}

template <class F>
auto with_schema_errors(F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("schema error: ") + e.what(), 0);
  }
}

}  // namespace detail

inline nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json vehicles = nlohmann::json::array();
  for (const auto& v : inst.vehicles) {
    vehicles.push_back(
        {{"availability", v.availability}, {"charge_time", v.charge_time}});
  }
  return {{"horizon", inst.horizon},
          {"stations", inst.num_stations},
          {"rewards", inst.rewards},
          {"vehicles", std::move(vehicles)}};
}

/// Availability lists are read as sets: order and duplicates are normalized.
inline Instance instance_from_json(const nlohmann::json& doc) {
  Instance inst = detail::with_schema_errors([&] {
    Instance out;
    out.horizon = doc.at("horizon").get<int>();
    out.num_stations = doc.at("stations").get<int>();
    out.rewards = doc.at("rewards").get<std::vector<std::vector<double>>>();
    for (const auto& v : doc.at("vehicles")) {
      Vehicle veh;
      veh.availability = v.at("availability").get<std::vector<int>>();
      veh.charge_time = v.at("charge_time").get<int>();
      std::sort(veh.availability.begin(), veh.availability.end());
      veh.availability.erase(
          std::unique(veh.availability.begin(), veh.availability.end()),
          veh.availability.end());
      out.vehicles.push_back(std::move(veh));
    }
    return out;
  });
  if (auto violations = validate_instance(inst); !violations.empty()) {
    throw InvalidInstanceError(std::move(violations));
  }
  return inst;
}

inline std::string save_instance(const Instance& inst) {
  return instance_to_json(inst).dump(2) + "\n";
}

inline Instance load_instance(std::string_view text) {
  return instance_from_json(detail::parse_document(text));
}

inline nlohmann::json schedule_to_json(const Schedule& sched) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& a : sched.assignments()) {
    list.push_back({{"vehicle", a.vehicle + 1},
                    {"station", a.station + 1},
                    {"time", a.time}});
  }
  return {{"assignments", std::move(list)},
          {"total_reward", sched.total_reward()}};
}

inline std::string save_schedule(const Schedule& sched) {
  return schedule_to_json(sched).dump(2) + "\n";
}

/// The cached total is recomputed from the instance, not trusted.
inline Schedule load_schedule(std::string_view text, const Instance& inst) {
  const auto doc = detail::parse_document(text);
  auto assignments = detail::with_schema_errors([&] {
    std::vector<Assignment> out;
    for (const auto& a : doc.at("assignments")) {
      out.push_back({a.at("vehicle").get<int>() - 1,
                     a.at("station").get<int>() - 1, a.at("time").get<int>()});
    }
    return out;
  });
  try {
    return Schedule(inst, std::move(assignments));
  } catch (const std::out_of_range& e) {
    throw ParseError(e.what(), 0);
  }
}

}  // namespace evvalet

#endif  // EVVALET_IO_HPP

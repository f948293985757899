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

#include "evvalet/approx.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "evvalet/exact.hpp"
#include "gtest/gtest.h"
#include "support.hpp"

namespace evvalet {
namespace {

using testing::single_station;
using Pair = std::pair<int, int>;  // (station, time), 0-based station

std::vector<FractionalEntry> StaircaseEntries() {
  return {{{0, 0, 1}, 0.50}, {{0, 1, 2}, 0.25}, {{0, 2, 6}, 0.75},
          {{0, 3, 8}, 0.25}, {{0, 4, 11}, 0.25}, {{0, 5, 11}, 0.25}};
}

std::map<Pair, double> HeightByPair(const Packing& pack) {
  std::map<Pair, double> out;
  for (const auto& s : pack.slices) out[{s.station, s.time}] += s.height();
  return out;
}

TEST(Greedy, TakesThePeakFirst) {
  const auto inst = single_station({4, 5, 4}, {{{1, 2, 3}, 1}});
  const auto sched = greedy_schedule(inst);
  EXPECT_EQ(sched.total_reward(), 5.0);
  EXPECT_EQ(sched.assignments(), (std::vector<Assignment>{{0, 0, 2}}));
}

TEST(Greedy, TrivialCases) {
  EXPECT_TRUE(greedy_schedule(single_station({-4, 0}, {{{1, 2}, 0}})).empty());
  const auto one = greedy_schedule(single_station({7}, {{{1}, 3}}));
  EXPECT_EQ(one.total_reward(), 7.0);
}

TEST(Greedy, TiesGoToEarlierTimeThenStationThenVehicle) {
  Instance inst;
  inst.horizon = 2;
  inst.num_stations = 2;
  inst.rewards = {{3, 3}, {3, 3}};
  inst.vehicles = {{{1, 2}, 1}, {{1, 2}, 1}};
  const auto sched = greedy_schedule(inst);
  EXPECT_EQ(sched.assignments(),
            (std::vector<Assignment>{{0, 0, 1}, {1, 1, 1}}));
}

TEST(Greedy, WithinAThirdOfOptimum) {
  std::mt19937_64 rng(101);
  for (int rep = 0; rep < 400; ++rep) {
    const auto inst = testing::random_instance(rng, {});
    const auto sched = greedy_schedule(inst);
    EXPECT_TRUE(is_feasible(sched, inst));
    EXPECT_GE(sched.total_reward(), brute_force_opt(inst).total_reward() / 3.0 - 1e-9);
  }
}

TEST(Greedy, OverlayWithBroadcastRewardsMatchesFastPath) {
  std::mt19937_64 rng(103);
  testing::RandomShape shape;
  shape.max_horizon = 12;
  shape.max_vehicles = 5;
  for (int rep = 0; rep < 200; ++rep) {
    const auto inst = testing::random_instance(rng, shape);
    const auto overlay = VehicleRewards::from_instance(inst);
    const auto fast = greedy_schedule(inst);
    const auto slow = greedy_schedule(inst, overlay);
    EXPECT_EQ(fast.assignments(), slow.assignments());
    EXPECT_EQ(overlay_reward(slow, overlay), slow.total_reward());
  }
}

TEST(Greedy, OverlayPrefersTheVehicleWithTheHigherReward) {
  const auto inst = single_station({1}, {{{1}, 0}, {{1}, 0}});
  VehicleRewards overlay(2, 1, 1);
  overlay.at(0, 0, 1) = 2.0;
  overlay.at(1, 0, 1) = 9.0;
  const auto sched = greedy_schedule(inst, overlay);
  EXPECT_EQ(sched.assignments(), (std::vector<Assignment>{{1, 0, 1}}));
  EXPECT_EQ(overlay_reward(sched, overlay), 9.0);
}

TEST(Packing, StaircaseLayout) {
  const auto entries = StaircaseEntries();
  const auto pack = pack_rectangles(0, entries, 4, 15);
  std::vector<double> station_three;
  for (const auto& s : pack.slices) {
    EXPECT_EQ(pack.x_end(s) - pack.x_begin(s), 5);
    if (s.station == 2) station_three.push_back(s.height());
  }
  std::sort(station_three.begin(), station_three.end());
  ASSERT_EQ(station_three.size(), 2u);
  EXPECT_NEAR(station_three[0], 0.25, 1e-12);
  EXPECT_NEAR(station_three[1], 0.50, 1e-12);

  auto stations_at = [&](double y) {
    std::set<int> out;
    for (auto [j, t] : sample_line(pack, y)) out.insert(j + 1);
    return out;
  };
  EXPECT_EQ(stations_at(0.10), (std::set<int>{1, 3, 5}));
  EXPECT_EQ(stations_at(0.40), (std::set<int>{1, 3, 6}));
  EXPECT_EQ(stations_at(0.60), (std::set<int>{2, 4}));
  EXPECT_EQ(stations_at(0.90), (std::set<int>{3}));
  EXPECT_EQ(sample_line(pack, 0.60), (std::vector<Pair>{{1, 2}, {3, 8}}));
}

TEST(Packing, TrivialLayouts) {
  const std::vector<FractionalEntry> full{{{0, 0, 3}, 1.0}};
  const auto one = pack_rectangles(0, full, 2, 5);
  ASSERT_EQ(one.slices.size(), 1u);
  EXPECT_EQ(one.slices[0].lo, 0.0);
  EXPECT_EQ(one.slices[0].hi, 1.0);
  for (double y : {0.0, 0.3, 0.999}) {
    EXPECT_EQ(sample_line(one, y), (std::vector<Pair>{{0, 3}}));
  }

  const std::vector<FractionalEntry> apart{{{0, 0, 1}, 0.6}, {{0, 0, 4}, 0.6}};
  const auto two = pack_rectangles(0, apart, 1, 5);
  ASSERT_EQ(two.slices.size(), 2u);
  for (const auto& s : two.slices) {
    EXPECT_EQ(s.lo, 0.0);
    EXPECT_NEAR(s.hi, 0.6, 1e-15);
  }
  EXPECT_TRUE(sample_line(two, 0.8).empty());
}

TEST(Packing, OverfullSpanIsAnError) {
  const std::vector<FractionalEntry> over{{{0, 0, 1}, 0.7}, {{0, 0, 2}, 0.7}};
  try {
    pack_rectangles(0, over, 1, 3);
    FAIL() << "expected SolverError";
  } catch (const SolverError& e) {
    EXPECT_NE(std::string(e.what()).find("[2, 4)"), std::string::npos) << e.what();
  }
}

TEST(Packing, DebugDump) {
  const auto entries = StaircaseEntries();
  std::ostringstream os;
  write_packing(pack_rectangles(0, entries, 4, 15), os);
  EXPECT_EQ(os.str().substr(0, 27), "vehicle 1 charge_time 4\n  s");
  EXPECT_NE(os.str().find("station 3 x [6, 11) y [0.75, 1)"), std::string::npos);
}

// Random LP solutions on generated instances give realistic packings.
TEST(Packing, ConservationDisjointnessAndBreakpoints) {
  std::mt19937_64 rng(107);
  testing::RandomShape shape;
  shape.max_horizon = 12;
  shape.max_stations = 4;
  shape.max_charge = 4;
  shape.max_vehicles = 4;
  for (int rep = 0; rep < 100; ++rep) {
    const auto inst = testing::random_instance(rng, shape);
    const auto sol = solve_lp(inst);
    const RoundingPlan plan(inst, sol);
    for (const auto& pack : plan.packings()) {
      std::map<Pair, double> want;
      for (const auto& e : sol.entries) {
        if (e.key.vehicle == pack.vehicle) want[{e.key.station, e.key.time}] = e.value;
      }
      const auto got = HeightByPair(pack);
      ASSERT_EQ(got.size(), want.size());
      for (const auto& [key, x] : want) EXPECT_NEAR(got.at(key), x, 1e-9);

      std::set<double> cuts{0.0, 1.0};
      for (std::size_t a = 0; a < pack.slices.size(); ++a) {
        const auto& s = pack.slices[a];
        EXPECT_GT(s.height(), 0.0);
        cuts.insert(std::min(s.lo, 1.0));
        cuts.insert(std::min(s.hi, 1.0));
        for (std::size_t b = a + 1; b < pack.slices.size(); ++b) {
          const auto& r = pack.slices[b];
          const bool x_overlap =
              pack.x_begin(s) < pack.x_end(r) && pack.x_begin(r) < pack.x_end(s);
          const bool y_overlap = s.lo < r.hi && r.lo < s.hi;
          EXPECT_FALSE(x_overlap && y_overlap);
        }
      }
      // Constant between consecutive cuts, and every line is feasible.
      const std::vector<double> c(cuts.begin(), cuts.end());
      for (std::size_t q = 0; q + 1 < c.size(); ++q) {
        const double lo = c[q], hi = c[q + 1];
        const auto at_lo = sample_line(pack, lo);
        EXPECT_EQ(at_lo, sample_line(pack, lo + (hi - lo) * 0.5));
        EXPECT_EQ(at_lo, sample_line(pack, std::nextafter(hi, lo)));
        for (std::size_t k = 1; k < at_lo.size(); ++k) {
          EXPECT_GT(at_lo[k].second - at_lo[k - 1].second, pack.charge_time);
        }
      }
    }
  }
}

TEST(RandomizedRounding, SingleVehicleIsExact) {
  std::mt19937_64 rng(109);
  testing::RandomShape shape;
  shape.max_horizon = 12;
  shape.max_stations = 3;
  shape.max_charge = 4;
  for (int rep = 0; rep < 40; ++rep) {
    const auto inst = testing::random_instance(rng, shape, 1);
    const auto sol = solve_lp(inst);
    const RoundingPlan plan(inst, sol);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      EXPECT_NEAR(plan.sample(seed).total_reward(), sol.objective, 1e-9);
    }
  }
}

TEST(RandomizedRounding, EmptySolutionGivesEmptySchedule) {
  const auto inst = single_station({0, 0}, {{{1, 2}, 0}});
  FractionalSolution zero;
  EXPECT_TRUE(randomized_rounding(inst, zero, 5).empty());
}

TEST(RandomizedRounding, RejectsInfeasibleSolution) {
  const auto inst = single_station({1, 1}, {{{1, 2}, 1}});
  FractionalSolution bad;
  bad.entries = {{{0, 0, 1}, 0.8}, {{0, 0, 2}, 0.8}};
  EXPECT_THROW(randomized_rounding(inst, bad, 1), ValetError);
}

TEST(RandomizedRounding, FeasibleAndDeterministic) {
  std::mt19937_64 rng(113);
  testing::RandomShape shape;
  shape.max_horizon = 12;
  shape.max_stations = 3;
  shape.max_charge = 3;
  shape.max_vehicles = 6;
  for (int rep = 0; rep < 40; ++rep) {
    const auto inst = testing::random_instance(rng, shape);
    const auto sol = solve_lp(inst);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const auto a = randomized_rounding(inst, sol, seed);
      EXPECT_TRUE(is_feasible(a, inst)) << is_feasible(a, inst).violation;
      EXPECT_EQ(a.assignments(), randomized_rounding(inst, sol, seed).assignments());
      EXPECT_LE(a.total_reward(), sol.objective + 1e-9);
    }
  }
}

TEST(RandomizedRounding, ConflictsKeepLowestVehicle) {
  const auto inst = single_station({5}, {{{1}, 0}, {{1}, 0}, {{1}, 0}});
  FractionalSolution sol;
  sol.entries = {{{1, 0, 1}, 0.5}, {{2, 0, 1}, 0.5}};
  sol.objective = 5.0;
  const RoundingPlan plan(inst, sol);
  int clashes = 0;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    const auto picks = plan.candidates(seed);
    const auto sched = plan.sample(seed);
    if (!picks[1].empty() && !picks[2].empty()) {
      ++clashes;
      EXPECT_EQ(sched.assignments(), (std::vector<Assignment>{{1, 0, 1}}));
    }
    EXPECT_LE(sched.size(), 1u);
  }
  EXPECT_GT(clashes, 0);
}

TEST(RandomizedRounding, MarginalsMatchFractionalValues) {
  std::mt19937_64 rng(127);
  testing::RandomShape shape;
  shape.max_horizon = 10;
  shape.max_stations = 3;
  shape.max_charge = 3;
  shape.max_vehicles = 3;
  const auto inst = testing::random_instance(rng, shape, 3);
  const auto sol = solve_lp(inst);
  const RoundingPlan plan(inst, sol);
  constexpr int kSeeds = 4000;
  std::map<Assignment, int> hits;
  for (int s = 0; s < kSeeds; ++s) {
    for (const auto& picks : plan.candidates(static_cast<std::uint64_t>(s))) {
      for (const auto& a : picks) ++hits[a];
    }
  }
  for (const auto& e : sol.entries) {
    const double freq = static_cast<double>(hits[e.key]) / kSeeds;
    const double se = std::sqrt(e.value * (1.0 - e.value) / kSeeds);
    EXPECT_LE(std::abs(freq - e.value), 3.0 * se + 1e-12);
  }
  for (const auto& [a, n] : hits) {
    const bool known = std::any_of(sol.entries.begin(), sol.entries.end(),
                                   [&](const auto& e) { return e.key == a; });
    EXPECT_TRUE(known);
  }
}

TEST(BoostedRR, RepeatsOneIsPlainRounding) {
  std::mt19937_64 rng(131);
  testing::RandomShape shape;
  shape.max_vehicles = 5;
  shape.max_horizon = 10;
  for (int rep = 0; rep < 30; ++rep) {
    const auto inst = testing::random_instance(rng, shape);
    const auto sol = solve_lp(inst);
    for (std::uint64_t seed : {0ull, 7ull, 99ull}) {
      EXPECT_EQ(boosted_rr(inst, sol, 1, seed).assignments(),
                randomized_rounding(inst, sol, seed).assignments());
    }
  }
  const auto inst = single_station({1}, {{{1}, 0}});
  EXPECT_THROW(boosted_rr(inst, solve_lp(inst), 0, 1), std::invalid_argument);
}

TEST(BoostedRR, MonotoneInRepeatsAndBestOfRuns) {
  std::mt19937_64 rng(137);
  testing::RandomShape shape;
  shape.max_vehicles = 6;
  shape.max_horizon = 10;
  shape.max_stations = 3;
  for (int rep = 0; rep < 30; ++rep) {
    const auto inst = testing::random_instance(rng, shape);
    const auto sol = solve_lp(inst);
    const RoundingPlan plan(inst, sol);
    double prev = -1.0;
    double best_single = -1.0;
    for (int r = 1; r <= 8; ++r) {
      const double got = boosted_rr(inst, sol, r, 17).total_reward();
      best_single = std::max(best_single, plan.sample(run_seed(17, r - 1)).total_reward());
      EXPECT_GE(got, prev);
      EXPECT_EQ(got, best_single);
      prev = got;
    }
  }
}

}  // namespace
}  // namespace evvalet

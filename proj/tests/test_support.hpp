#pragma once

// Shared fixtures for the test suites: tiny hand-built plans and degenerate
// weather years whose closed-form behavior the tests can check against.

#include <cmath>
#include <string>

#include "planopt/geometry.hpp"
#include "planopt/weather.hpp"

namespace planopt::test {

/// Single 5 x 4 m space with one 2 x 1.2 m plan-south window, mid-wall.
inline FloorPlan make_box_plan(const std::string& id = "box") {
  FloorPlan plan;
  plan.id = id;
  Space s;
  s.name = "room";
  s.rect = {0.0, 0.0, 5.0, 4.0};
  s.internal_gain = 4.0;
  Window w;
  w.wall_side = WallSide::PlanSouth;
  w.offset = 1.5;
  w.width = 2.0;
  w.height = 1.2;
  w.sill = 0.9;
  s.windows.push_back(w);
  plan.spaces.push_back(std::move(s));
  return plan;
}

/// Two 4 x 4 m spaces sharing the x = 4 wall; each gets one outward window.
inline FloorPlan make_duplex_plan(const std::string& id = "duplex") {
  FloorPlan plan;
  plan.id = id;
  Space west;
  west.name = "west";
  west.rect = {0.0, 0.0, 4.0, 4.0};
  west.internal_gain = 4.0;
  west.windows.push_back({WallSide::PlanWest, 1.0, 1.6, 1.2, 0.9, {}, {}});
  Space east;
  east.name = "east";
  east.rect = {4.0, 0.0, 4.0, 4.0};
  east.internal_gain = 4.0;
  east.windows.push_back({WallSide::PlanEast, 1.0, 1.6, 1.2, 0.9, {}, {}});
  plan.spaces.push_back(std::move(west));
  plan.spaces.push_back(std::move(east));
  return plan;
}

/// A full year pinned at one dry-bulb temperature with no sun.
inline WeatherSeries make_constant_weather(double dry_bulb,
                                           double latitude = 40.2) {
  WeatherSeries w;
  w.site = {latitude, -8.4};
  w.hours.assign(kHoursPerYear, HourRecord{dry_bulb, 0.0, 0.0});
  return w;
}

/// Deterministic xorshift for test-local randomness; seeds are pinned so
/// failures reproduce.
struct TestRng {
  std::uint64_t state;
  explicit TestRng(std::uint64_t seed) : state(seed ? seed : 0x9e3779b9u) {}
  std::uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(next() >> 11) /
                             9007199254740992.0);
  }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

inline bool close_rel(double a, double b, double rel) {
  const double scale = std::max({std::abs(a), std::abs(b), 1.0});
  return std::abs(a - b) <= rel * scale;
}

}  // namespace planopt::test

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "planopt/geometry.hpp"
#include "planopt/solar.hpp"
#include "planopt/weather.hpp"

namespace planopt {

struct TemperatureSeries {
  std::string space_name;
  std::vector<double> temps;  // degC, one per weather hour
};

struct SimulationResult {
  std::vector<TemperatureSeries> series;  // same order as plan.spaces
  std::uint64_t evaluation_token = 0;     // monotone per-process tag
  std::vector<std::string> warnings;
};

/// Single-node-per-space lumped-capacitance simulator.
///
/// Each space follows C dT/dt = UA (T_out - T) + Q_solar(t) + Q_int with the
/// exact exponential hourly update
///   T(t+1) = T_eq(t) + (T(t) - T_eq(t)) exp(-UA dt / C),
///   T_eq(t) = T_out(t) + (Q_solar(t) + Q_int) / UA,
/// which is unconditionally stable at dt = 1 h. Q_solar sums
/// SHGC * area * incident irradiance * (1 - shading fraction) over the
/// space's windows; UA = wall_u * opaque exterior area + window_u * window
/// area; C = capacitance_multiplier * 1.2 kJ/m3K * volume. T(0) = T_out(0).
///
/// A space with no exterior surface gets a nominal 0.5 W/K per m2 of floor
/// area to outdoors and a warning on the result instead of an error.
///
/// The constructor precomputes the sun-position table, so one Simulator
/// should be reused across the many evaluations of an optimization run.
/// simulate() is const and reentrant; instances are safe to share.
class Simulator {
 public:
  explicit Simulator(const WeatherSeries& weather);

  /// orientation_override, when present, substitutes plan.orientation_deg
  /// without mutating the plan.
  SimulationResult simulate(const FloorPlan& plan,
                            std::optional<double> orientation_override = {}) const;

  const WeatherSeries& weather() const { return weather_; }

 private:
  WeatherSeries weather_;
  std::vector<SolarSample> solar_table_;
};

/// One-shot convenience; builds a Simulator per call.
SimulationResult simulate_plan(const FloorPlan& plan,
                               const WeatherSeries& weather,
                               std::optional<double> orientation_override = {});

/// Process-wide count of completed simulations (atomic).
std::uint64_t simulations_performed();

void write_temperature_csv(const SimulationResult& result, std::ostream& out);

}  // namespace planopt

#include "planopt/thermal.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace planopt {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kAirVolumetricHeat = 1200.0;  // J/m3K (1.2 kJ/m3K)
constexpr double kInteriorFallbackUA = 0.5;    // W/K per m2 floor area
constexpr double kSecondsPerHour = 3600.0;

std::atomic<std::uint64_t> g_simulation_count{0};

struct WindowGeom {
  const Window* window;
  double sin_facade;
  double cos_facade;
  double gain_coeff;  // SHGC * glazed area
};

}  // namespace

Simulator::Simulator(const WeatherSeries& weather)
    : weather_(weather), solar_table_(build_solar_table(weather)) {}

SimulationResult Simulator::simulate(
    const FloorPlan& plan, std::optional<double> orientation_override) const {
  const double orientation =
      orientation_override.value_or(plan.orientation_deg);
  const std::size_t n_hours = weather_.hours.size();

  SimulationResult result;
  result.series.reserve(plan.spaces.size());

  for (std::size_t si = 0; si < plan.spaces.size(); ++si) {
    const Space& sp = plan.spaces[si];

    double window_area = 0.0;
    std::vector<WindowGeom> windows;
    windows.reserve(sp.windows.size());
    for (const Window& w : sp.windows) {
      const double fa_rad =
          facade_azimuth(w.wall_side, orientation) * kPi / 180.0;
      windows.push_back({&w, std::sin(fa_rad), std::cos(fa_rad),
                         plan.envelope.shgc * w.area()});
      window_area += w.area();
    }

    double exterior_area = 0.0;
    for (std::size_t s = 0; s < kWallSideCount; ++s)
      exterior_area += exterior_length(plan, si, static_cast<WallSide>(s)) *
                       sp.ceiling_height;
    const double opaque_area = std::max(0.0, exterior_area - window_area);

    double ua = plan.envelope.wall_u * opaque_area +
                plan.envelope.window_u * window_area;
    if (ua <= 0.0) {
      ua = kInteriorFallbackUA * sp.floor_area();
      result.warnings.push_back("space " + sp.name +
                                " has no exterior surface; using nominal "
                                "envelope conductance");
    }

    const double capacitance =
        plan.envelope.capacitance_multiplier * kAirVolumetricHeat * sp.volume();
    const double decay = std::exp(-ua * kSecondsPerHour / capacitance);
    const double q_internal = sp.internal_gain * sp.floor_area();

    TemperatureSeries ts;
    ts.space_name = sp.name;
    ts.temps.resize(n_hours);

    double temp = weather_.hours.empty() ? 0.0 : weather_.hours[0].dry_bulb;
    for (std::size_t h = 0; h < n_hours; ++h) {
      const HourRecord& rec = weather_.hours[h];
      const SolarSample& sun = solar_table_[h];

      double q_solar = 0.0;
      for (const WindowGeom& wg : windows) {
        const double irr = incident_irradiance(sun, wg.sin_facade,
                                               wg.cos_facade, rec.dni, rec.dhi);
        if (irr <= 0.0) continue;
        const double shade =
            shading_fraction(*wg.window, sun, wg.sin_facade, wg.cos_facade);
        q_solar += wg.gain_coeff * irr * (1.0 - shade);
      }

      const double t_eq = rec.dry_bulb + (q_solar + q_internal) / ua;
      temp = t_eq + (temp - t_eq) * decay;
      ts.temps[h] = temp;
    }

    result.series.push_back(std::move(ts));
  }

  result.evaluation_token = g_simulation_count.fetch_add(1) + 1;
  return result;
}

SimulationResult simulate_plan(const FloorPlan& plan,
                               const WeatherSeries& weather,
                               std::optional<double> orientation_override) {
  return Simulator(weather).simulate(plan, orientation_override);
}

std::uint64_t simulations_performed() { return g_simulation_count.load(); }

void write_temperature_csv(const SimulationResult& result, std::ostream& out) {
  out << "hour,space,temp_c\n";
  char buf[128];
  for (const TemperatureSeries& ts : result.series) {
    for (std::size_t h = 0; h < ts.temps.size(); ++h) {
      std::snprintf(buf, sizeof buf, "%zu,%s,%.6f\n", h, ts.space_name.c_str(),
                    ts.temps[h]);
      out << buf;
    }
  }
}

}  // namespace planopt

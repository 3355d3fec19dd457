#pragma once

#include <vector>

#include "planopt/geometry.hpp"

namespace planopt {

struct WeatherSeries;

/// Sun position, degrees. Azimuth is clockwise from true north in [0, 360).
struct SunPosition {
  double altitude = 0.0;  // [-90, 90]
  double azimuth = 0.0;   // [0, 360)
};

/// Declination/hour-angle solar geometry in local solar time.
/// day_of_year in 1..365, solar_hour in 0..24 (12 = solar noon).
SunPosition solar_position(int day_of_year, double solar_hour,
                           double latitude_deg);

/// Per-hour sun geometry with the trigonometric factors the simulation loop
/// needs, so the hot path runs without trig calls.
struct SolarSample {
  double sin_alt = 0.0;
  double cos_alt = 1.0;
  double tan_alt = 0.0;
  double sin_az = 0.0;
  double cos_az = 1.0;
  bool above_horizon = false;
};

SolarSample make_solar_sample(const SunPosition& sun);

/// One sample per hour of the year (mid-hour convention: hour h uses solar
/// time h mod 24 + 0.5 on day h div 24 + 1), from the series' site latitude.
std::vector<SolarSample> build_solar_table(const WeatherSeries& weather);

/// Irradiance on a vertical facade: beam projected by the incidence cosine
/// plus half the diffuse horizontal (isotropic sky, view factor 0.5).
/// Only the diffuse term remains when the sun is below the horizon or behind
/// the facade. Never negative.
double incident_irradiance(const SunPosition& sun, double facade_azimuth_deg,
                           double dni, double dhi);
double incident_irradiance(const SolarSample& s, double sin_facade,
                           double cos_facade, double dni, double dhi);

/// Fraction of window area shaded by its overhang and fins under a flat
/// projection model. Overhang shadow runs down the facade by
/// depth * tan(profile angle); the sun-side fin shadow runs across by
/// depth * |tan(sun azimuth - facade azimuth)|. The two fractions combine
/// as 1 - (1 - f_overhang)(1 - f_fins), clipped to [0, 1]. Returns 0 when
/// the sun is behind the facade or below the horizon.
double shading_fraction(const Window& window, const SunPosition& sun,
                        double facade_azimuth_deg);
double shading_fraction(const Window& window, const SolarSample& s,
                        double sin_facade, double cos_facade);

}  // namespace planopt

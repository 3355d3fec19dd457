#include "planopt/solar.hpp"

#include <algorithm>
#include <cmath>

#include "planopt/weather.hpp"

namespace planopt {

namespace {

constexpr double kPi = 3.14159265358979323846;

double deg2rad(double d) { return d * kPi / 180.0; }
double rad2deg(double r) { return r * 180.0 / kPi; }

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

SunPosition solar_position(int day_of_year, double solar_hour,
                           double latitude_deg) {
  const double decl =
      deg2rad(23.45) * std::sin(deg2rad(360.0 * (284.0 + day_of_year) / 365.0));
  const double hour_angle = deg2rad(15.0 * (solar_hour - 12.0));
  const double lat = deg2rad(latitude_deg);

  const double sin_alt = std::sin(lat) * std::sin(decl) +
                         std::cos(lat) * std::cos(decl) * std::cos(hour_angle);
  const double alt = std::asin(std::clamp(sin_alt, -1.0, 1.0));

  // atan2 form measured from south, positive towards west; shift to
  // clockwise-from-north.
  const double az_south =
      std::atan2(std::sin(hour_angle),
                 std::cos(hour_angle) * std::sin(lat) -
                     std::tan(decl) * std::cos(lat));
  const double az = normalize_angle_deg(rad2deg(az_south) + 180.0);

  return SunPosition{rad2deg(alt), az};
}

SolarSample make_solar_sample(const SunPosition& sun) {
  SolarSample s;
  const double alt = deg2rad(sun.altitude);
  const double az = deg2rad(sun.azimuth);
  s.sin_alt = std::sin(alt);
  s.cos_alt = std::cos(alt);
  s.tan_alt = s.cos_alt > 1e-12 ? s.sin_alt / s.cos_alt : 1e18;
  s.sin_az = std::sin(az);
  s.cos_az = std::cos(az);
  s.above_horizon = s.sin_alt > 0.0;
  return s;
}

std::vector<SolarSample> build_solar_table(const WeatherSeries& weather) {
  std::vector<SolarSample> table;
  table.reserve(weather.hours.size());
  for (std::size_t h = 0; h < weather.hours.size(); ++h) {
    const int day = static_cast<int>(h / 24) + 1;
    const double solar_hour = static_cast<double>(h % 24) + 0.5;
    table.push_back(make_solar_sample(
        solar_position(day, solar_hour, weather.site.latitude)));
  }
  return table;
}

double incident_irradiance(const SolarSample& s, double sin_facade,
                           double cos_facade, double dni, double dhi) {
  const double diffuse = 0.5 * dhi;
  if (!s.above_horizon) return diffuse;
  // cos(sun azimuth - facade azimuth)
  const double cos_rel = s.cos_az * cos_facade + s.sin_az * sin_facade;
  const double cos_inc = s.cos_alt * cos_rel;
  if (cos_inc <= 0.0) return diffuse;
  return cos_inc * dni + diffuse;
}

double incident_irradiance(const SunPosition& sun, double facade_azimuth_deg,
                           double dni, double dhi) {
  const double fa = deg2rad(facade_azimuth_deg);
  return incident_irradiance(make_solar_sample(sun), std::sin(fa), std::cos(fa),
                             dni, dhi);
}

double shading_fraction(const Window& window, const SolarSample& s,
                        double sin_facade, double cos_facade) {
  if (!s.above_horizon) return 0.0;
  const double cos_rel = s.cos_az * cos_facade + s.sin_az * sin_facade;
  if (cos_rel <= 0.0 || s.cos_alt * cos_rel <= 0.0) return 0.0;

  double f_overhang = 0.0;
  if (window.overhang && window.overhang->depth > 0.0 && window.height > 0.0) {
    // tan(profile angle) = tan(altitude) / cos(sun az - facade az)
    const double shadow_depth = window.overhang->depth * s.tan_alt / cos_rel;
    f_overhang = clamp01(shadow_depth / window.height);
  }

  double f_fins = 0.0;
  if (window.fins && window.width > 0.0) {
    const double sin_rel = s.sin_az * cos_facade - s.cos_az * sin_facade;
    // Sun offset clockwise from the facade normal shades from the right
    // jamb, counterclockwise from the left.
    const double depth =
        sin_rel >= 0.0 ? window.fins->right_depth : window.fins->left_depth;
    if (depth > 0.0) {
      const double shadow_width = depth * std::abs(sin_rel / cos_rel);
      f_fins = clamp01(shadow_width / window.width);
    }
  }

  return clamp01(1.0 - (1.0 - f_overhang) * (1.0 - f_fins));
}

double shading_fraction(const Window& window, const SunPosition& sun,
                        double facade_azimuth_deg) {
  const double fa = deg2rad(facade_azimuth_deg);
  return shading_fraction(window, make_solar_sample(sun), std::sin(fa),
                          std::cos(fa));
}

}  // namespace planopt

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace planopt {

constexpr std::size_t kHoursPerYear = 8760;

struct HourRecord {
  double dry_bulb = 0.0;  // degC
  double dni = 0.0;       // W/m2, direct normal
  double dhi = 0.0;       // W/m2, diffuse horizontal
};

struct WeatherSite {
  double latitude = 0.0;
  double longitude = 0.0;
};

/// Full-year hourly record. Row h is hour-of-year h (0-based):
/// day-of-year = h div 24 + 1, local solar hour = h mod 24 + 0.5.
struct WeatherSeries {
  WeatherSite site;
  std::vector<HourRecord> hours;
};

/// Parses the weather CSV format: a `# lat=<deg>,lon=<deg>` header line
/// followed by exactly 8760 rows `hour_index,dry_bulb_c,dni_wm2,dhi_wm2`.
/// Throws std::runtime_error naming the offending line on malformed rows,
/// wrong column counts, out-of-range values, or a row count other than 8760.
WeatherSeries load_weather(std::istream& in);
WeatherSeries load_weather_file(const std::filesystem::path& path);

void write_weather_csv(const WeatherSeries& weather, std::ostream& out);
void write_weather_file(const WeatherSeries& weather,
                        const std::filesystem::path& path);

/// Synthetic Coimbra-like year: sinusoidal annual/diurnal dry-bulb
/// (mean 15 degC, annual amplitude 7, diurnal amplitude 5) and clear-sky
/// beam irradiance capped at 900 W/m2. Synthetic, not measured data.
WeatherSeries make_synthetic_weather(double latitude = 40.2,
                                     double longitude = -8.4);

double annual_mean_dry_bulb(const WeatherSeries& weather);

}  // namespace planopt

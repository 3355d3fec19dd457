#include "planopt/weather.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "planopt/solar.hpp"

namespace planopt {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Broadband transmittance of the hazy coastal atmosphere applied on top of
// the Meinel clear-sky beam.
constexpr double kBeamClearness = 0.30;

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw std::runtime_error("weather csv line " + std::to_string(line_no) +
                           ": " + what);
}

double parse_number(const std::string& field, std::size_t line_no,
                    const char* name) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    fail(line_no, std::string("malformed ") + name + " value '" + field + "'");
  return value;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, ',')) fields.push_back(cur);
  return fields;
}

}  // namespace

WeatherSeries load_weather(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw std::runtime_error("weather csv is empty");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();

  WeatherSeries ws;
  {
    double lat = 0.0, lon = 0.0;
    if (std::sscanf(line.c_str(), "# lat=%lf,lon=%lf", &lat, &lon) != 2)
      fail(line_no, "expected header '# lat=<deg>,lon=<deg>'");
    ws.site = {lat, lon};
  }

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    const auto fields = split_csv(line);
    if (fields.size() != 4)
      fail(line_no, "expected 4 columns, got " + std::to_string(fields.size()));

    const double hour_index = parse_number(fields[0], line_no, "hour_index");
    const double dry_bulb = parse_number(fields[1], line_no, "dry_bulb_c");
    const double dni = parse_number(fields[2], line_no, "dni_wm2");
    const double dhi = parse_number(fields[3], line_no, "dhi_wm2");

    const std::size_t expected = ws.hours.size();
    if (hour_index != static_cast<double>(expected))
      fail(line_no, "hour_index " + fields[0] + " out of order (expected " +
                        std::to_string(expected) + ")");
    if (dry_bulb < -60.0 || dry_bulb > 60.0)
      fail(line_no, "dry_bulb_c out of range [-60, 60]");
    if (dni < 0.0) fail(line_no, "dni_wm2 is negative");
    if (dhi < 0.0) fail(line_no, "dhi_wm2 is negative");
    if (ws.hours.size() >= kHoursPerYear)
      fail(line_no, "expected 8760 rows, got more");

    ws.hours.push_back({dry_bulb, dni, dhi});
  }

  if (ws.hours.size() != kHoursPerYear)
    throw std::runtime_error("weather csv: expected 8760 rows, got " +
                             std::to_string(ws.hours.size()));
  return ws;
}

WeatherSeries load_weather_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open weather file: " + path.string());
  try {
    return load_weather(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_weather_csv(const WeatherSeries& weather, std::ostream& out) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "# lat=%.6g,lon=%.6g\n", weather.site.latitude,
                weather.site.longitude);
  out << buf;
  for (std::size_t h = 0; h < weather.hours.size(); ++h) {
    const HourRecord& r = weather.hours[h];
    std::snprintf(buf, sizeof buf, "%zu,%.10g,%.10g,%.10g\n", h, r.dry_bulb,
                  r.dni, r.dhi);
    out << buf;
  }
}

void write_weather_file(const WeatherSeries& weather,
                        const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write weather file: " + path.string());
  write_weather_csv(weather, out);
}

WeatherSeries make_synthetic_weather(double latitude, double longitude) {
  WeatherSeries ws;
  ws.site = {latitude, longitude};
  ws.hours.reserve(kHoursPerYear);
  for (std::size_t h = 0; h < kHoursPerYear; ++h) {
    const int day = static_cast<int>(h / 24);  // 0-based
    const double solar_hour = static_cast<double>(h % 24) + 0.5;

    // Annual peak near day 202 (late July), diurnal peak at 15:00.
    const double annual = 7.0 * std::cos(2.0 * kPi * (day - 202) / 365.0);
    const double diurnal = 5.0 * std::cos(2.0 * kPi * (solar_hour - 15.0) / 24.0);
    const double dry_bulb = 15.0 + annual + diurnal;

    const SunPosition sun = solar_position(day + 1, solar_hour, latitude);
    double dni = 0.0, dhi = 0.0;
    if (sun.altitude > 0.0) {
      const double sin_alt = std::sin(sun.altitude * kPi / 180.0);
      const double air_mass = 1.0 / std::max(sin_alt, 1e-4);
      // Meinel clear-sky beam scaled for maritime haze, capped at 900 W/m2.
      dni = std::min(900.0, kBeamClearness * 1353.0 *
                                std::pow(0.7, std::pow(air_mass, 0.678)));
      dhi = std::min(150.0, 170.0 * sin_alt);
    }
    ws.hours.push_back({dry_bulb, dni, dhi});
  }
  return ws;
}

double annual_mean_dry_bulb(const WeatherSeries& weather) {
  double sum = 0.0;
  for (const HourRecord& r : weather.hours) sum += r.dry_bulb;
  return weather.hours.empty() ? 0.0 : sum / static_cast<double>(weather.hours.size());
}

}  // namespace planopt

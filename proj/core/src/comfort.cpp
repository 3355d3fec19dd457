#include "planopt/comfort.hpp"

#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace planopt {

std::vector<double> running_mean_outdoor(const WeatherSeries& weather,
                                         double alpha) {
  const std::size_t n_days = weather.hours.size() / 24;
  std::vector<double> daily(n_days, 0.0);
  for (std::size_t d = 0; d < n_days; ++d) {
    double sum = 0.0;
    for (std::size_t h = 0; h < 24; ++h)
      sum += weather.hours[d * 24 + h].dry_bulb;
    daily[d] = sum / 24.0;
  }

  std::vector<double> t_rm(n_days, 0.0);
  if (n_days == 0) return t_rm;
  t_rm[0] = annual_mean_dry_bulb(weather);
  for (std::size_t d = 1; d < n_days; ++d)
    t_rm[d] = (1.0 - alpha) * daily[d - 1] + alpha * t_rm[d - 1];
  return t_rm;
}

ComfortBand comfort_band(double t_rm, const ComfortParams& params) {
  const double clamped = std::clamp(t_rm, params.clamp_low, params.clamp_high);
  const double comfort = params.slope * clamped + params.intercept;
  return ComfortBand{comfort - params.half_width, comfort + params.half_width};
}

std::vector<ComfortBand> hourly_comfort_bands(const WeatherSeries& weather,
                                              const ComfortParams& params) {
  const std::vector<double> t_rm = running_mean_outdoor(weather, params.alpha);
  std::vector<ComfortBand> bands;
  bands.reserve(weather.hours.size());
  for (std::size_t h = 0; h < weather.hours.size(); ++h) {
    const std::size_t day = std::min(h / 24, t_rm.size() - 1);
    bands.push_back(comfort_band(t_rm[day], params));
  }
  return bands;
}

double deviation_penalty(double t, const ComfortBand& band,
                         const PenaltyWeights& weights) {
  if (t < band.t1) return weights.w1 * (band.t1 - t);
  if (t > band.t2) return weights.w2 * (t - band.t2);
  return 0.0;
}

PenaltyReport total_penalty(const SimulationResult& result,
                            const std::vector<ComfortBand>& bands,
                            const PenaltyWeights& weights) {
  PenaltyReport report;
  report.weights = weights;
  report.spaces.reserve(result.series.size());

  for (const TemperatureSeries& ts : result.series) {
    if (ts.temps.size() != bands.size())
      throw std::invalid_argument(
          "total_penalty: series '" + ts.space_name + "' covers " +
          std::to_string(ts.temps.size()) + " hours but bands cover " +
          std::to_string(bands.size()));

    SpacePenalty sp;
    sp.name = ts.space_name;
    for (std::size_t h = 0; h < ts.temps.size(); ++h) {
      const double t = ts.temps[h];
      const ComfortBand& band = bands[h];
      if (t < band.t1)
        sp.under += weights.w1 * (band.t1 - t);
      else if (t > band.t2)
        sp.over += weights.w2 * (t - band.t2);
    }
    report.total += sp.under + sp.over;
    report.spaces.push_back(std::move(sp));
  }
  return report;
}

std::string penalty_report_to_json_string(const PenaltyReport& report,
                                          int indent) {
  nlohmann::json j;
  j["total"] = report.total;
  j["weights"] = {{"w1", report.weights.w1}, {"w2", report.weights.w2}};
  nlohmann::json spaces = nlohmann::json::array();
  for (const SpacePenalty& sp : report.spaces) {
    spaces.push_back({{"name", sp.name},
                      {"under", sp.under},
                      {"over", sp.over},
                      {"total", sp.total()}});
  }
  j["spaces"] = std::move(spaces);
  return j.dump(indent);
}

}  // namespace planopt

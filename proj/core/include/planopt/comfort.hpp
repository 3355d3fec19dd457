#pragma once

#include <string>
#include <vector>

#include "planopt/thermal.hpp"
#include "planopt/weather.hpp"

namespace planopt {

/// Asymmetric discomfort weights: w1 scales underheating below the lower
/// limit, w2 overheating above the upper limit.
struct PenaltyWeights {
  double w1 = 1.0;
  double w2 = 1.0;
};

/// Lower/upper operative-temperature limits for one day, degC.
struct ComfortBand {
  double t1 = 0.0;
  double t2 = 0.0;
};

/// Adaptive-band constants. Defaults give the Category II band
/// T_c = 0.33 T_rm + 18.8 with +-3 K width, alpha = 0.8 running mean, and
/// the running mean clamped to [10, 30] degC before use.
struct ComfortParams {
  double alpha = 0.8;
  double slope = 0.33;
  double intercept = 18.8;
  double half_width = 3.0;
  double clamp_low = 10.0;
  double clamp_high = 30.0;
};

struct SpacePenalty {
  std::string name;
  double under = 0.0;  // weighted degree-hours below t1
  double over = 0.0;   // weighted degree-hours above t2
  double total() const { return under + over; }
};

struct PenaltyReport {
  double total = 0.0;
  PenaltyWeights weights;
  std::vector<SpacePenalty> spaces;
};

/// Daily exponentially weighted running mean of the outdoor dry-bulb:
/// T_rm(d) = (1 - alpha) T_daily(d-1) + alpha T_rm(d-1), with T_rm(0)
/// initialized to the annual mean. One value per day.
std::vector<double> running_mean_outdoor(const WeatherSeries& weather,
                                         double alpha = 0.8);

ComfortBand comfort_band(double t_rm, const ComfortParams& params = {});

/// One band per hour; every hour of a day shares the day's band.
std::vector<ComfortBand> hourly_comfort_bands(const WeatherSeries& weather,
                                              const ComfortParams& params = {});

/// Piecewise degree-hour deviation: w1 (t1 - t) below the band,
/// w2 (t - t2) above it, zero inside.
double deviation_penalty(double t, const ComfortBand& band,
                         const PenaltyWeights& weights);

/// Double sum of the hourly deviations over all spaces. Every temperature
/// series must cover exactly bands.size() hours; throws
/// std::invalid_argument otherwise.
PenaltyReport total_penalty(const SimulationResult& result,
                            const std::vector<ComfortBand>& bands,
                            const PenaltyWeights& weights);

std::string penalty_report_to_json_string(const PenaltyReport& report,
                                          int indent = 2);

}  // namespace planopt

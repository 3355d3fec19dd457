#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "planopt/geometry.hpp"
#include "planopt/optimizer.hpp"

namespace planopt {

struct CurveSample {
  int angle = 0;
  double penalty = 0;
};

/// Exhaustive penalty-vs-orientation sweep: the ground truth the descent is
/// judged against.  Samples cover 0..360-res at stride res; min/max ties
/// resolve to the smallest angle.
struct OrientationCurve {
  int resolution_deg = 1;
  std::vector<CurveSample> samples;
  int min_angle = 0;
  double min_value = 0;
  int max_angle = 0;
  double max_value = 0;
  double amplitude() const { return max_value - min_value; }
  /// Sample at the grid point nearest to `angle` (wrapped).
  double value_at(int angle) const;
};

/// Builds curve metadata (min/max/ties) from raw samples.
OrientationCurve make_curve(std::vector<CurveSample> samples,
                            int resolution_deg);

/// One full-year simulation per sampled angle; 360 must be divisible by
/// resolution_deg.  Samples are independent, so jobs > 1 sweeps in parallel.
OrientationCurve orientation_curve(const FloorPlan& plan,
                                   const PenaltyEvaluator& evaluator,
                                   int resolution_deg = 1, int jobs = 1);

/// How good a found angle is against the exhaustive curve: absolute penalty
/// gap to the global minimum, circular distance to the NEAREST angle whose
/// penalty is within 1e-9 of the minimum (symmetric plans have several), and
/// the gap as a percentage of the curve amplitude (0 for flat curves).
struct IndicatorSet {
  double penalty_gap = 0;
  double angle_deviation = 0;      // deg, in [0, 180]
  double amplitude_error_pct = 0;  // in [0, 100]
};

IndicatorSet indicators(int found_angle, const OrientationCurve& curve);

/// Cyclically shifts the curve so its (first) maximum sits at angle 0.
OrientationCurve align_curve_to_max(const OrientationCurve& curve);

/// `angle_deg,penalty` rows preceded by `# plan_id=`, `# min_angle=`,
/// `# max_angle=` comments, plus `# found_angle=` when one is given.
void write_curve_csv(const OrientationCurve& curve, const std::string& plan_id,
                     std::ostream& out, std::optional<int> found_angle = {});
void write_curve_csv_file(const OrientationCurve& curve,
                          const std::string& plan_id, const std::string& path,
                          std::optional<int> found_angle = {});

struct Aggregate {
  double mean = 0, min = 0, max = 0, q1 = 0, median = 0, q3 = 0;
};

/// Summary statistics with linearly interpolated quartiles; zeros for an
/// empty sample.
Aggregate aggregate(std::vector<double> values);

struct BenchmarkEntry {
  std::string plan_id;
  bool success = false;
  std::string error;
  double initial_penalty = 0;
  double final_penalty = 0;
  std::uint64_t pipeline_simulations = 0;
  std::uint64_t curve_simulations = 0;
  int orientation_queries = 0;     // objective queries across both invocations
  int orientation_simulations = 0;  // queries that actually simulated
  std::vector<int> found_angles;   // one per orientation invocation
  std::vector<IndicatorSet> invocation_indicators;
  // Minimum and amplitude of each invocation's own reference curve.
  std::vector<int> reference_min_angles;
  std::vector<double> reference_amplitudes;
  int curve_min_angle = 0;
  int curve_max_angle = 0;
  double curve_min_value = 0;
  double curve_max_value = 0;
  double amplitude = 0;
  int aligned_min_angle = 0;
  bool opposite_min = false;  // aligned minimum within [90, 270]
};

struct BenchmarkReport {
  std::vector<BenchmarkEntry> entries;
  int plan_count = 0;
  int success_count = 0;
  // Pooled over every orientation invocation of every successful plan.
  Aggregate penalty_gap;
  Aggregate angle_deviation;
  Aggregate amplitude_error_pct;
  double orientation_sim_ratio = 0;  // orientation sims / (successes x 360)
  double mean_evals_per_invocation = 0;
  double opposite_min_share = 0;  // of successes; the minimum-location stat
  std::uint64_t total_simulations = 0;
};

/// Full effectiveness/efficiency run: per plan, optimize with the pipeline,
/// then judge each orientation invocation against the exhaustive 1-degree
/// curve of the geometry that invocation actually searched (later operators
/// reshape the curve, so the final plan's curve would score pipeline ordering,
/// not the search).  The final plan is swept too, for the minimum-location
/// statistic and the curve artifacts.  Per-plan failures are isolated into
/// their entry; aggregates cover the successes, folded in input order.
BenchmarkReport run_benchmark(const std::vector<FloorPlan>& plans,
                              const PenaltyEvaluator& evaluator,
                              const OrientDescentConfig& cfg = {},
                              int jobs = 1);

std::string benchmark_report_to_json_string(const BenchmarkReport& report,
                                            int indent = 2);

}  // namespace planopt

#include "planopt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "planopt/parallel.hpp"
#include "planopt/plan_io.hpp"

namespace planopt {

namespace {

constexpr double kMinTieEps = 1e-9;  // degree-hours; global-minimum tie band

int wrap_deg(int deg) { return ((deg % 360) + 360) % 360; }

double circular_distance(int a, int b) {
  const int d = std::abs(wrap_deg(a) - wrap_deg(b));
  return std::min(d, 360 - d);
}

}  // namespace

double OrientationCurve::value_at(int angle) const {
  if (samples.empty()) throw std::invalid_argument("empty curve");
  const int w = wrap_deg(angle);
  const std::size_t idx =
      static_cast<std::size_t>(std::lround(static_cast<double>(w) /
                                           resolution_deg)) %
      samples.size();
  return samples[idx].penalty;
}

OrientationCurve make_curve(std::vector<CurveSample> samples,
                            int resolution_deg) {
  if (samples.empty()) throw std::invalid_argument("empty curve");
  std::sort(samples.begin(), samples.end(),
            [](const CurveSample& a, const CurveSample& b) {
              return a.angle < b.angle;
            });
  OrientationCurve curve;
  curve.resolution_deg = resolution_deg;
  curve.min_angle = curve.max_angle = samples.front().angle;
  curve.min_value = curve.max_value = samples.front().penalty;
  for (const auto& s : samples) {
    if (s.penalty < curve.min_value) {
      curve.min_value = s.penalty;
      curve.min_angle = s.angle;
    }
    if (s.penalty > curve.max_value) {
      curve.max_value = s.penalty;
      curve.max_angle = s.angle;
    }
  }
  curve.samples = std::move(samples);
  return curve;
}

OrientationCurve orientation_curve(const FloorPlan& plan,
                                   const PenaltyEvaluator& evaluator,
                                   int resolution_deg, int jobs) {
  if (resolution_deg < 1 || 360 % resolution_deg != 0)
    throw std::invalid_argument("resolution must divide 360");
  const std::size_t n = static_cast<std::size_t>(360 / resolution_deg);
  std::vector<CurveSample> samples(n);
  parallel_for(n, jobs, [&](std::size_t i) {
    const int angle = static_cast<int>(i) * resolution_deg;
    samples[i] = {angle, evaluator.evaluate_at(plan, angle)};
  });
  return make_curve(std::move(samples), resolution_deg);
}

IndicatorSet indicators(int found_angle, const OrientationCurve& curve) {
  if (curve.samples.empty()) throw std::invalid_argument("empty curve");
  IndicatorSet out;
  const double f_found = curve.value_at(found_angle);
  out.penalty_gap = std::max(0.0, f_found - curve.min_value);
  double best = 180.0;
  for (const auto& s : curve.samples)
    if (s.penalty <= curve.min_value + kMinTieEps)
      best = std::min(best, circular_distance(found_angle, s.angle));
  out.angle_deviation = best;
  const double amp = curve.amplitude();
  out.amplitude_error_pct = amp > 0 ? 100.0 * out.penalty_gap / amp : 0.0;
  return out;
}

OrientationCurve align_curve_to_max(const OrientationCurve& curve) {
  if (curve.samples.empty()) throw std::invalid_argument("empty curve");
  const int shift = curve.max_angle;
  std::vector<CurveSample> shifted;
  shifted.reserve(curve.samples.size());
  for (const auto& s : curve.samples)
    shifted.push_back({wrap_deg(s.angle - shift), s.penalty});
  return make_curve(std::move(shifted), curve.resolution_deg);
}

void write_curve_csv(const OrientationCurve& curve, const std::string& plan_id,
                     std::ostream& out, std::optional<int> found_angle) {
  out << "# plan_id=" << plan_id << "\n";
  out << "# min_angle=" << curve.min_angle << "\n";
  out << "# max_angle=" << curve.max_angle << "\n";
  if (found_angle) out << "# found_angle=" << *found_angle << "\n";
  out << "angle_deg,penalty\n";
  char buf[64];
  for (const auto& s : curve.samples) {
    std::snprintf(buf, sizeof(buf), "%d,%.10g\n", s.angle, s.penalty);
    out << buf;
  }
}

void write_curve_csv_file(const OrientationCurve& curve,
                          const std::string& plan_id, const std::string& path,
                          std::optional<int> found_angle) {
  std::ostringstream text;
  write_curve_csv(curve, plan_id, text, found_angle);
  write_file_atomic(path, text.str());
}

Aggregate aggregate(std::vector<double> values) {
  Aggregate a;
  if (values.empty()) return a;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  a.mean = std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(n);
  a.min = values.front();
  a.max = values.back();
  auto quantile = [&](double p) {
    const double pos = p * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= n) return values[lo];
    return values[lo] * (1 - frac) + values[lo + 1] * frac;
  };
  a.q1 = quantile(0.25);
  a.median = quantile(0.5);
  a.q3 = quantile(0.75);
  return a;
}

BenchmarkReport run_benchmark(const std::vector<FloorPlan>& plans,
                              const PenaltyEvaluator& evaluator,
                              const OrientDescentConfig& cfg, int jobs) {
  if (plans.empty()) throw std::invalid_argument("no plans to benchmark");
  BenchmarkReport report;
  report.plan_count = static_cast<int>(plans.size());
  report.entries.resize(plans.size());

  parallel_for(plans.size(), jobs, [&](std::size_t i) {
    BenchmarkEntry e;
    e.plan_id = plans[i].id;
    try {
      FloorPlan plan = plans[i];
      PipelineReport pr;
      try {
        pr = run_pipeline(plan, evaluator, cfg);
      } catch (const PipelineError& pe) {
        e.pipeline_simulations = pe.partial_report().total_simulations;
        throw;
      }
      e.initial_penalty = pr.initial_penalty;
      e.final_penalty = pr.final_penalty;
      e.pipeline_simulations = pr.total_simulations;
      for (const auto& t : pr.operators) {
        if (t.operator_name != "orientation") continue;
        e.orientation_queries += t.evaluations_used;
        e.orientation_simulations += t.evaluations_used - t.cache_hits;
        if (t.result_angle) e.found_angles.push_back(*t.result_angle);
      }
      // Each invocation is judged against the exhaustive curve of the
      // geometry it searched; the operators that follow reshape the curve,
      // so the final curve is the wrong yardstick for the earlier pass.
      for (std::size_t k = 0;
           k < e.found_angles.size() && k < pr.orientation_states.size(); ++k) {
        const OrientationCurve ref =
            orientation_curve(pr.orientation_states[k], evaluator, 1, 1);
        e.curve_simulations += ref.samples.size();
        e.invocation_indicators.push_back(indicators(e.found_angles[k], ref));
        e.reference_min_angles.push_back(ref.min_angle);
        e.reference_amplitudes.push_back(ref.amplitude());
      }
      // The final plan's curve feeds the minimum-location statistic and the
      // published curve artifacts.
      const OrientationCurve curve = orientation_curve(plan, evaluator, 1, 1);
      e.curve_simulations += curve.samples.size();
      e.curve_min_angle = curve.min_angle;
      e.curve_max_angle = curve.max_angle;
      e.curve_min_value = curve.min_value;
      e.curve_max_value = curve.max_value;
      e.amplitude = curve.amplitude();
      const OrientationCurve aligned = align_curve_to_max(curve);
      e.aligned_min_angle = aligned.min_angle;
      e.opposite_min = aligned.min_angle >= 90 && aligned.min_angle <= 270;
      e.success = true;
    } catch (const std::exception& ex) {
      e.success = false;
      e.error = ex.what();
    }
    report.entries[i] = std::move(e);
  });

  std::vector<double> gaps, deviations, errors;
  std::uint64_t orientation_sims = 0;
  std::uint64_t orientation_queries = 0;
  std::size_t invocations = 0;
  int opposite = 0;
  for (const auto& e : report.entries) {
    report.total_simulations += e.pipeline_simulations + e.curve_simulations;
    if (!e.success) continue;
    ++report.success_count;
    orientation_sims += static_cast<std::uint64_t>(e.orientation_simulations);
    orientation_queries += static_cast<std::uint64_t>(e.orientation_queries);
    invocations += e.invocation_indicators.size();
    opposite += e.opposite_min ? 1 : 0;
    for (const auto& ind : e.invocation_indicators) {
      gaps.push_back(ind.penalty_gap);
      deviations.push_back(ind.angle_deviation);
      errors.push_back(ind.amplitude_error_pct);
    }
  }
  report.penalty_gap = aggregate(std::move(gaps));
  report.angle_deviation = aggregate(std::move(deviations));
  report.amplitude_error_pct = aggregate(std::move(errors));
  if (report.success_count > 0) {
    report.orientation_sim_ratio =
        static_cast<double>(orientation_sims) /
        (360.0 * static_cast<double>(report.success_count));
    report.opposite_min_share =
        static_cast<double>(opposite) /
        static_cast<double>(report.success_count);
  }
  if (invocations > 0)
    report.mean_evals_per_invocation =
        static_cast<double>(orientation_queries) /
        static_cast<double>(invocations);
  return report;
}

std::string benchmark_report_to_json_string(const BenchmarkReport& report,
                                            int indent) {
  using nlohmann::ordered_json;
  auto agg = [](const Aggregate& a) {
    return ordered_json{{"mean", a.mean}, {"min", a.min},       {"max", a.max},
                        {"q1", a.q1},     {"median", a.median}, {"q3", a.q3}};
  };
  ordered_json entries = ordered_json::array();
  for (const auto& e : report.entries) {
    ordered_json je{{"plan_id", e.plan_id}, {"success", e.success}};
    if (!e.success) {
      je["error"] = e.error;
      je["simulations"] = e.pipeline_simulations;
      entries.push_back(std::move(je));
      continue;
    }
    ordered_json inds = ordered_json::array();
    for (std::size_t k = 0; k < e.invocation_indicators.size(); ++k) {
      const auto& ind = e.invocation_indicators[k];
      ordered_json ji{{"penalty_gap", ind.penalty_gap},
                      {"angle_deviation", ind.angle_deviation},
                      {"amplitude_error_pct", ind.amplitude_error_pct}};
      if (k < e.reference_min_angles.size()) {
        ji["reference_min_angle"] = e.reference_min_angles[k];
        ji["reference_amplitude"] = e.reference_amplitudes[k];
      }
      inds.push_back(std::move(ji));
    }
    je["initial_penalty"] = e.initial_penalty;
    je["final_penalty"] = e.final_penalty;
    je["pipeline_simulations"] = e.pipeline_simulations;
    je["curve_simulations"] = e.curve_simulations;
    je["orientation_evals"] = e.orientation_queries;
    je["orientation_simulations"] = e.orientation_simulations;
    je["found_angles"] = e.found_angles;
    je["indicators"] = std::move(inds);
    je["curve"] = {{"min_angle", e.curve_min_angle},
                   {"min_value", e.curve_min_value},
                   {"max_angle", e.curve_max_angle},
                   {"max_value", e.curve_max_value},
                   {"amplitude", e.amplitude}};
    je["aligned_min_angle"] = e.aligned_min_angle;
    je["opposite_min"] = e.opposite_min;
    entries.push_back(std::move(je));
  }
  ordered_json j{
      {"plan_count", report.plan_count},
      {"success_count", report.success_count},
      {"indicators",
       {{"penalty_gap", agg(report.penalty_gap)},
        {"angle_deviation", agg(report.angle_deviation)},
        {"amplitude_error_pct", agg(report.amplitude_error_pct)}}},
      {"orientation_sim_ratio", report.orientation_sim_ratio},
      {"mean_evals_per_invocation", report.mean_evals_per_invocation},
      {"opposite_min_share", report.opposite_min_share},
      {"total_simulations", report.total_simulations},
      {"plans", std::move(entries)}};
  return j.dump(indent) + "\n";
}

}  // namespace planopt

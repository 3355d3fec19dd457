#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "planopt/comfort.hpp"
#include "planopt/geometry.hpp"
#include "planopt/thermal.hpp"
#include "planopt/weather.hpp"

namespace planopt {

/// Adaptive-step search over whole-degree orientations.
///
/// One invocation behaves like a coarse-to-fine descent along the orientation
/// penalty curve: start at the plan's angle with a +initial_step move; while a
/// candidate strictly improves, keep stepping the same way; on a failure (or a
/// tie) the step flips sign and shrinks by `decay` (rounded away from zero to
/// whole degrees), and the search stops once the shrunken magnitude would drop
/// below min_step or the evaluation budget runs out.
struct OrientDescentConfig {
  int initial_step = 30;  // deg, applied with its sign on the first move
  int min_step = 1;       // deg; search ends when |step|/decay falls below
  double decay = 2.0;     // step divisor on failure
  int max_evals = 32;     // objective-query budget per invocation
  // On an accepted move, restore the step magnitude to |initial_step|
  // (keeping the current direction) instead of keeping the shrunken one.
  bool reset_on_success = false;
};

struct TraceStep {
  std::string move;   // human-readable candidate description
  double value = 0;   // candidate angle / offset / depth, operator-dependent
  double penalty = 0;
  bool accepted = false;
  bool cache_hit = false;
};

/// Per-operator audit record.  evaluations_used counts objective queries
/// (including the baseline query that establishes penalty_before), cache_hits
/// the subset answered without a fresh simulation; steps log candidates only.
struct OperatorTrace {
  std::string operator_name;
  double penalty_before = 0;
  double penalty_after = 0;
  int evaluations_used = 0;
  int cache_hits = 0;
  int moves_accepted = 0;
  std::optional<int> result_angle;  // set by the orientation operator
  std::vector<TraceStep> steps;
};

/// Objective failure wrapper: carries whatever trace existed when the
/// evaluator threw, so callers can report partial progress.
class OperatorError : public std::runtime_error {
 public:
  OperatorError(const std::string& what, OperatorTrace partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const OperatorTrace& partial_trace() const { return partial_; }

 private:
  OperatorTrace partial_;
};

struct OrientResult {
  int best_angle = 0;
  double best_penalty = 0;
  OperatorTrace trace;
};

/// Runs the descent from start_deg (rounded to a whole degree, wrapped to
/// [0, 360)) over `objective`.  Every queried angle is memoized for the
/// invocation so no angle is simulated twice; `warm` pre-seeds that memo with
/// already-known penalties (the pipeline passes the incoming plan's penalty
/// at its current angle).  Evaluator exceptions surface as OperatorError with
/// the partial trace attached.
OrientResult orient_descend(double start_deg,
                            const std::function<double(int)>& objective,
                            const OrientDescentConfig& cfg = {},
                            const std::map<int, double>& warm = {});

/// Simulation-backed objective shared by the pipeline, the exhaustive curve
/// and the benchmark.  Bands are precomputed once from the weather; every
/// evaluate call is one full-year simulation and bumps an atomic counter.
class PenaltyEvaluator {
 public:
  PenaltyEvaluator(const WeatherSeries& weather, PenaltyWeights weights = {},
                   ComfortParams params = {});

  double evaluate(const FloorPlan& plan) const;
  double evaluate_at(const FloorPlan& plan, double orientation_deg) const;
  PenaltyReport report(const FloorPlan& plan) const;

  std::uint64_t calls() const { return calls_.load(); }
  const Simulator& simulator() const { return simulator_; }
  const std::vector<ComfortBand>& bands() const { return bands_; }
  const PenaltyWeights& weights() const { return weights_; }
  const ComfortParams& params() const { return params_; }

 private:
  Simulator simulator_;
  PenaltyWeights weights_;
  ComfortParams params_;
  std::vector<ComfortBand> bands_;
  mutable std::atomic<std::uint64_t> calls_{0};
};

/// Geometry operators.  Each takes the current plan and its known penalty,
/// mutates the plan only through strictly non-worsening accepted moves, and
/// returns the audit trace; `penalty` is updated to the post-operator value.
/// Candidates that would break plan validity are skipped without simulating.
OperatorTrace window_translate_op(FloorPlan& plan,
                                  const PenaltyEvaluator& evaluator,
                                  double& penalty);
OperatorTrace window_dimension_op(FloorPlan& plan,
                                  const PenaltyEvaluator& evaluator,
                                  double& penalty);
OperatorTrace wall_translate_op(FloorPlan& plan,
                                const PenaltyEvaluator& evaluator,
                                double& penalty);
OperatorTrace overhang_op(FloorPlan& plan, const PenaltyEvaluator& evaluator,
                          double& penalty);
OperatorTrace fin_op(FloorPlan& plan, const PenaltyEvaluator& evaluator,
                     double& penalty);
/// orient_descend wired to the evaluator; writes the best angle back into the
/// plan.
OperatorTrace orientation_op(FloorPlan& plan, const PenaltyEvaluator& evaluator,
                             double& penalty,
                             const OrientDescentConfig& cfg = {});

struct PipelineReport {
  std::string plan_id;
  double initial_penalty = 0;
  double final_penalty = 0;
  std::vector<OperatorTrace> operators;
  // Plan geometry as each orientation invocation saw it (captured at the
  // start of the invocation).  The benchmark sweeps these to judge an
  // invocation against the curve it actually searched.
  std::vector<FloorPlan> orientation_states;
  // Full-year simulations actually run: the initial baseline evaluation plus
  // every non-cache-hit operator query.
  std::uint64_t total_simulations = 0;
};

class PipelineError : public std::runtime_error {
 public:
  PipelineError(const std::string& what, PipelineReport partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const PipelineReport& partial_report() const { return partial_; }

 private:
  PipelineReport partial_;
};

/// The fixed operator sequence: window_translate, orientation,
/// window_dimension, wall_translate, orientation, overhang, fins.  The plan's
/// orientation is normalized to a whole degree up front; every stage is
/// penalty-nonincreasing and leaves the plan valid.
PipelineReport run_pipeline(FloorPlan& plan, const PenaltyEvaluator& evaluator,
                            const OrientDescentConfig& cfg = {});

/// `{plan_id, initial_penalty, final_penalty, operators:[{name, before,
/// after, evals, cache_hits, contribution_pct}], total_simulations}`.
/// Contributions are percentages of the total improvement (all zero when the
/// pipeline improved nothing).
std::string pipeline_report_to_json_string(const PipelineReport& report,
                                           int indent = 2);

}  // namespace planopt

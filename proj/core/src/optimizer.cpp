#include "planopt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include <nlohmann/json.hpp>

namespace planopt {

namespace {

constexpr double kTieEps = 0.0;  // strict improvement: any tie is a failure

// Whole-degree grid position for an arbitrary angle.
int angle_grid(double deg) {
  double n = std::fmod(deg, 360.0);
  if (n < 0) n += 360.0;
  return static_cast<int>(std::lround(n)) % 360;
}

int wrap_deg(int deg) { return ((deg % 360) + 360) % 360; }

const char* side_name(WallSide side) {
  switch (side) {
    case WallSide::PlanNorth:
      return "plan-north";
    case WallSide::PlanEast:
      return "plan-east";
    case WallSide::PlanSouth:
      return "plan-south";
    case WallSide::PlanWest:
      return "plan-west";
  }
  return "?";
}

void check_config(const OrientDescentConfig& cfg) {
  if (cfg.initial_step <= 0)
    throw std::invalid_argument("initial_step must be positive");
  if (cfg.min_step < 1) throw std::invalid_argument("min_step must be >= 1");
  if (!(cfg.decay > 1.0)) throw std::invalid_argument("decay must be > 1");
  if (cfg.max_evals < 2) throw std::invalid_argument("max_evals must be >= 2");
}

// Shared scaffolding for the greedy geometry operators: threads the current
// penalty, gates candidates on plan validity, and keeps the audit trace.
struct Greedy {
  FloorPlan& plan;
  const PenaltyEvaluator& evaluator;
  OperatorTrace trace;
  double current;

  Greedy(const char* name, FloorPlan& p, const PenaltyEvaluator& e,
         double penalty)
      : plan(p), evaluator(e), current(penalty) {
    trace.operator_name = name;
    trace.penalty_before = penalty;
    // The incoming penalty was computed by the previous stage; acknowledging
    // it here keeps "one query answered from cache" bookkeeping uniform.
    trace.evaluations_used = 1;
    trace.cache_hits = 1;
  }

  // Evaluates a candidate plan (skipping invalid ones without simulating) and
  // accepts it on strict improvement.  Returns true when accepted.
  bool try_candidate(FloorPlan&& candidate, std::string move, double value) {
    if (!validate_plan(candidate).empty()) return false;
    ++trace.evaluations_used;
    double p;
    try {
      p = evaluator.evaluate(candidate);
    } catch (const std::exception& e) {
      finish();
      throw OperatorError(e.what(), trace);
    }
    const bool accepted = p < current - kTieEps;
    trace.steps.push_back({std::move(move), value, p, accepted, false});
    if (accepted) {
      plan = std::move(candidate);
      current = p;
      ++trace.moves_accepted;
    }
    return accepted;
  }

  // Evaluates a candidate for argmin-style operators without accepting;
  // the caller applies the winner itself.
  double probe(FloorPlan&& candidate, std::string move, double value) {
    ++trace.evaluations_used;
    double p;
    try {
      p = evaluator.evaluate(candidate);
    } catch (const std::exception& e) {
      finish();
      throw OperatorError(e.what(), trace);
    }
    trace.steps.push_back({std::move(move), value, p, false, false});
    return p;
  }

  // Logs a candidate whose penalty is already known (no simulation).
  void probe_cached(std::string move, double value, double penalty) {
    ++trace.evaluations_used;
    ++trace.cache_hits;
    trace.steps.push_back({std::move(move), value, penalty, false, true});
  }

  void finish() { trace.penalty_after = current; }
};

std::string window_tag(const Space& space, std::size_t wi) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%s/window%zu", space.name.c_str(), wi);
  return buf;
}

}  // namespace

OrientResult orient_descend(double start_deg,
                            const std::function<double(int)>& objective,
                            const OrientDescentConfig& cfg,
                            const std::map<int, double>& warm) {
  check_config(cfg);
  OperatorTrace trace;
  trace.operator_name = "orientation";

  std::map<int, double> memo(warm);
  bool last_was_hit = false;
  auto query = [&](int angle) -> double {
    ++trace.evaluations_used;
    if (auto it = memo.find(angle); it != memo.end()) {
      ++trace.cache_hits;
      last_was_hit = true;
      return it->second;
    }
    last_was_hit = false;
    double v;
    try {
      v = objective(angle);
    } catch (const std::exception& e) {
      throw OperatorError(e.what(), trace);  // penalty_after = best so far
    }
    memo.emplace(angle, v);
    return v;
  };

  int theta = angle_grid(start_deg);
  double f_theta = query(theta);
  trace.penalty_before = f_theta;
  trace.penalty_after = f_theta;

  int step = cfg.initial_step;
  while (trace.evaluations_used < cfg.max_evals) {
    const int candidate = wrap_deg(theta + step);
    const double f_cand = query(candidate);
    const bool accepted = f_cand < f_theta;
    char mv[32];
    std::snprintf(mv, sizeof(mv), "angle %d", candidate);
    trace.steps.push_back({mv, static_cast<double>(candidate), f_cand, accepted,
                           last_was_hit});
    if (accepted) {
      theta = candidate;
      f_theta = f_cand;
      trace.penalty_after = f_theta;
      ++trace.moves_accepted;
      if (cfg.reset_on_success)
        step = step > 0 ? cfg.initial_step : -cfg.initial_step;
    } else {
      // Failed (or tied): flip direction and shrink.  The search is over once
      // the shrunken magnitude falls below the resolution floor.
      const double next_mag = std::abs(step) / cfg.decay;
      if (next_mag < cfg.min_step) break;
      const int mag = static_cast<int>(std::ceil(next_mag - 1e-9));
      step = step > 0 ? -mag : mag;
    }
  }

  trace.penalty_after = f_theta;
  trace.result_angle = theta;
  return {theta, f_theta, trace};
}

PenaltyEvaluator::PenaltyEvaluator(const WeatherSeries& weather,
                                   PenaltyWeights weights, ComfortParams params)
    : simulator_(weather),
      weights_(weights),
      params_(params),
      bands_(hourly_comfort_bands(weather, params)) {}

double PenaltyEvaluator::evaluate(const FloorPlan& plan) const {
  ++calls_;
  return total_penalty(simulator_.simulate(plan), bands_, weights_).total;
}

double PenaltyEvaluator::evaluate_at(const FloorPlan& plan,
                                     double orientation_deg) const {
  ++calls_;
  return total_penalty(simulator_.simulate(plan, orientation_deg), bands_,
                       weights_)
      .total;
}

PenaltyReport PenaltyEvaluator::report(const FloorPlan& plan) const {
  ++calls_;
  return total_penalty(simulator_.simulate(plan), bands_, weights_);
}

OperatorTrace window_translate_op(FloorPlan& plan,
                                  const PenaltyEvaluator& evaluator,
                                  double& penalty) {
  Greedy g("window_translate", plan, evaluator, penalty);
  for (std::size_t si = 0; si < plan.spaces.size(); ++si) {
    for (std::size_t wi = 0; wi < plan.spaces[si].windows.size(); ++wi) {
      bool improved = true;
      while (improved) {
        improved = false;
        for (double delta : {0.2, -0.2}) {
          const Space& sp = plan.spaces[si];
          const Window& w = sp.windows[wi];
          const double len = sp.wall_length(w.wall_side);
          const double offset =
              std::clamp(w.offset + delta, 0.0, len - w.width);
          if (std::abs(offset - w.offset) < 1e-9) continue;  // pinned at end
          FloorPlan cand = plan;
          cand.spaces[si].windows[wi].offset = offset;
          char mv[160];
          std::snprintf(mv, sizeof(mv), "%s offset %+.1f",
                        window_tag(sp, wi).c_str(), delta);
          if (g.try_candidate(std::move(cand), mv, offset)) {
            improved = true;
            break;
          }
        }
      }
    }
  }
  g.finish();
  penalty = g.current;
  return std::move(g.trace);
}

OperatorTrace window_dimension_op(FloorPlan& plan,
                                  const PenaltyEvaluator& evaluator,
                                  double& penalty) {
  Greedy g("window_dimension", plan, evaluator, penalty);
  for (std::size_t si = 0; si < plan.spaces.size(); ++si) {
    for (std::size_t wi = 0; wi < plan.spaces[si].windows.size(); ++wi) {
      bool improved = true;
      while (improved) {
        improved = false;
        for (double factor : {0.9, 1.1}) {
          const Space& sp = plan.spaces[si];
          const Window& w = sp.windows[wi];
          const double area = w.area() * factor;
          if (area < 0.05 * sp.floor_area() - 1e-12 ||
              area > 0.40 * sp.floor_area() + 1e-12)
            continue;
          const double scale = std::sqrt(factor);
          const double width = w.width * scale;
          const double height = w.height * scale;
          const double len = sp.wall_length(w.wall_side);
          if (width > len + 1e-12) continue;
          double sill = w.sill;
          if (sill + height > sp.ceiling_height)
            sill = sp.ceiling_height - height;  // keep the head below ceiling
          if (sill < 0) continue;
          const double center = w.offset + w.width / 2;
          FloorPlan cand = plan;
          Window& cw = cand.spaces[si].windows[wi];
          cw.width = width;
          cw.height = height;
          cw.sill = sill;
          cw.offset = std::clamp(center - width / 2, 0.0, len - width);
          char mv[160];
          std::snprintf(mv, sizeof(mv), "%s area x%.1f",
                        window_tag(sp, wi).c_str(), factor);
          if (g.try_candidate(std::move(cand), mv, area)) {
            improved = true;
            break;
          }
        }
      }
    }
  }
  g.finish();
  penalty = g.current;
  return std::move(g.trace);
}

namespace {

// Applies one ±0.1 m translation of a space edge; returns false when the
// resulting rectangle would violate the 1.5 m minimum dimension.
bool shift_edge(Rect& r, WallSide side, double delta) {
  switch (side) {
    case WallSide::PlanNorth:
      r.h += delta;
      break;
    case WallSide::PlanSouth:
      r.y -= delta;
      r.h += delta;
      break;
    case WallSide::PlanEast:
      r.w += delta;
      break;
    case WallSide::PlanWest:
      r.x -= delta;
      r.w += delta;
      break;
  }
  return r.w >= 1.5 - 1e-9 && r.h >= 1.5 - 1e-9;
}

}  // namespace

OperatorTrace wall_translate_op(FloorPlan& plan,
                                const PenaltyEvaluator& evaluator,
                                double& penalty) {
  Greedy g("wall_translate", plan, evaluator, penalty);
  constexpr WallSide kSides[] = {WallSide::PlanNorth, WallSide::PlanEast,
                                 WallSide::PlanSouth, WallSide::PlanWest};
  // An edge may drift at most this far from where the operator found it.
  // Growing the envelope monotonically dilutes solar gain per unit volume,
  // so without the cap the greedy walk inflates the footprint indefinitely;
  // with it the operator stays a local adjustment.
  constexpr double kMaxEdgeShift = 0.5;
  for (std::size_t si = 0; si < plan.spaces.size(); ++si) {
    for (WallSide side : kSides) {
      double drift = 0.0;  // net displacement of this edge so far
      bool improved = true;
      while (improved) {
        improved = false;
        // Only edges facing outdoors move; interior partitions stay put.
        if (exterior_length(plan, si, side) <= 1e-9) break;
        for (double delta : {0.1, -0.1}) {  // + pushes the edge outward
          if (std::abs(drift + delta) > kMaxEdgeShift + 1e-9) continue;
          FloorPlan cand = plan;
          if (!shift_edge(cand.spaces[si].rect, side, delta)) continue;
          char mv[160];
          std::snprintf(mv, sizeof(mv), "%s wall %s %+.1f",
                        plan.spaces[si].name.c_str(), side_name(side), delta);
          if (g.try_candidate(std::move(cand), mv, delta)) {
            drift += delta;
            improved = true;
            break;
          }
        }
      }
    }
  }
  g.finish();
  penalty = g.current;
  return std::move(g.trace);
}

namespace {

constexpr double kShadeDepths[] = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};

double overhang_depth(const Window& w) {
  return w.overhang ? w.overhang->depth : 0.0;
}

void set_overhang(Window& w, double depth) {
  if (depth > 0)
    w.overhang = Overhang{depth};
  else
    w.overhang.reset();
}

double fin_depth(const Window& w, bool left) {
  if (!w.fins) return 0.0;
  return left ? w.fins->left_depth : w.fins->right_depth;
}

void set_fin(Window& w, bool left, double depth) {
  FinPair f = w.fins.value_or(FinPair{});
  (left ? f.left_depth : f.right_depth) = depth;
  if (f.left_depth > 0 || f.right_depth > 0)
    w.fins = f;
  else
    w.fins.reset();
}

// Exhaustive argmin over the fixed depth set for one shading element.
// Ascending iteration plus strict comparison resolves ties toward the
// smaller depth; the incumbent depth's penalty is reused, not re-simulated.
template <typename Apply>
void pick_depth(Greedy& g, std::size_t si, std::size_t wi, const char* label,
                double current_depth, const Apply& apply) {
  double best_depth = current_depth;
  double best_penalty = g.current;
  int best_step = -1;
  for (double depth : kShadeDepths) {
    char mv[160];
    std::snprintf(mv, sizeof(mv), "%s %s %.1f",
                  window_tag(g.plan.spaces[si], wi).c_str(), label, depth);
    if (std::abs(depth - current_depth) < 1e-12) {
      g.probe_cached(mv, depth, g.current);
      continue;
    }
    FloorPlan cand = g.plan;
    apply(cand.spaces[si].windows[wi], depth);
    const double p = g.probe(std::move(cand), mv, depth);
    if (p < best_penalty) {
      best_penalty = p;
      best_depth = depth;
      best_step = static_cast<int>(g.trace.steps.size()) - 1;
    }
  }
  if (std::abs(best_depth - current_depth) >= 1e-12) {
    apply(g.plan.spaces[si].windows[wi], best_depth);
    g.current = best_penalty;
    ++g.trace.moves_accepted;
    if (best_step >= 0) g.trace.steps[best_step].accepted = true;
  }
}

}  // namespace

OperatorTrace overhang_op(FloorPlan& plan, const PenaltyEvaluator& evaluator,
                          double& penalty) {
  Greedy g("overhang", plan, evaluator, penalty);
  for (std::size_t si = 0; si < plan.spaces.size(); ++si)
    for (std::size_t wi = 0; wi < plan.spaces[si].windows.size(); ++wi)
      pick_depth(g, si, wi, "overhang",
                 overhang_depth(plan.spaces[si].windows[wi]),
                 [](Window& w, double d) { set_overhang(w, d); });
  g.finish();
  penalty = g.current;
  return std::move(g.trace);
}

OperatorTrace fin_op(FloorPlan& plan, const PenaltyEvaluator& evaluator,
                     double& penalty) {
  Greedy g("fins", plan, evaluator, penalty);
  for (std::size_t si = 0; si < plan.spaces.size(); ++si)
    for (std::size_t wi = 0; wi < plan.spaces[si].windows.size(); ++wi) {
      pick_depth(g, si, wi, "fin-left",
                 fin_depth(plan.spaces[si].windows[wi], true),
                 [](Window& w, double d) { set_fin(w, true, d); });
      pick_depth(g, si, wi, "fin-right",
                 fin_depth(plan.spaces[si].windows[wi], false),
                 [](Window& w, double d) { set_fin(w, false, d); });
    }
  g.finish();
  penalty = g.current;
  return std::move(g.trace);
}

OperatorTrace orientation_op(FloorPlan& plan, const PenaltyEvaluator& evaluator,
                             double& penalty,
                             const OrientDescentConfig& cfg) {
  const int start = angle_grid(plan.orientation_deg);
  std::map<int, double> warm;
  // The incoming penalty matches the start angle only when the plan already
  // sits on the whole-degree grid; seed the memo just in that case.
  const double norm = normalize_angle_deg(plan.orientation_deg);
  if (std::abs(norm - std::round(norm)) < 1e-9) warm.emplace(start, penalty);
  auto objective = [&plan, &evaluator](int angle) {
    return evaluator.evaluate_at(plan, angle);
  };
  OrientResult res = orient_descend(plan.orientation_deg, objective, cfg, warm);
  plan.orientation_deg = res.best_angle;
  penalty = res.best_penalty;
  return std::move(res.trace);
}

PipelineReport run_pipeline(FloorPlan& plan, const PenaltyEvaluator& evaluator,
                            const OrientDescentConfig& cfg) {
  if (auto errors = validate_plan(plan); !errors.empty())
    throw std::invalid_argument("invalid plan " + plan.id + ": " +
                                errors.front());
  // The descent works on whole degrees; align the plan before the baseline.
  plan.orientation_deg = angle_grid(plan.orientation_deg);

  PipelineReport report;
  report.plan_id = plan.id;
  double penalty = evaluator.evaluate(plan);  // the one up-front simulation
  report.initial_penalty = penalty;

  auto finalize = [&report, &penalty] {
    report.final_penalty = penalty;
    report.total_simulations = 1;
    for (const auto& t : report.operators)
      report.total_simulations +=
          static_cast<std::uint64_t>(t.evaluations_used - t.cache_hits);
  };

  try {
    report.operators.push_back(window_translate_op(plan, evaluator, penalty));
    report.orientation_states.push_back(plan);
    report.operators.push_back(orientation_op(plan, evaluator, penalty, cfg));
    report.operators.push_back(window_dimension_op(plan, evaluator, penalty));
    report.operators.push_back(wall_translate_op(plan, evaluator, penalty));
    report.orientation_states.push_back(plan);
    report.operators.push_back(orientation_op(plan, evaluator, penalty, cfg));
    report.operators.push_back(overhang_op(plan, evaluator, penalty));
    report.operators.push_back(fin_op(plan, evaluator, penalty));
  } catch (const OperatorError& e) {
    report.operators.push_back(e.partial_trace());
    finalize();
    throw PipelineError(e.what(), std::move(report));
  }
  finalize();
  return report;
}

std::string pipeline_report_to_json_string(const PipelineReport& report,
                                           int indent) {
  using nlohmann::ordered_json;
  const double improvement = report.initial_penalty - report.final_penalty;
  ordered_json ops = ordered_json::array();
  for (const auto& t : report.operators) {
    const double gain = t.penalty_before - t.penalty_after;
    ops.push_back({{"name", t.operator_name},
                   {"before", t.penalty_before},
                   {"after", t.penalty_after},
                   {"evals", t.evaluations_used},
                   {"cache_hits", t.cache_hits},
                   {"contribution_pct",
                    improvement > 0 ? 100.0 * gain / improvement : 0.0}});
  }
  ordered_json j{{"plan_id", report.plan_id},
                 {"initial_penalty", report.initial_penalty},
                 {"final_penalty", report.final_penalty},
                 {"operators", std::move(ops)},
                 {"total_simulations", report.total_simulations}};
  return j.dump(indent) + "\n";
}

}  // namespace planopt

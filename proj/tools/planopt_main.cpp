// planopt: floor-plan thermal optimization toolkit.
//
// Subcommands: generate, simulate, optimize, curve, benchmark.
// Exit codes: 0 success, 1 usage/configuration error, 2 partial failure.

#include <atomic>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "planopt/comfort.hpp"
#include "planopt/oracle.hpp"
#include "planopt/optimizer.hpp"
#include "planopt/parallel.hpp"
#include "planopt/plan_io.hpp"
#include "planopt/synthesis.hpp"
#include "planopt/thermal.hpp"
#include "planopt/weather.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace planopt;

namespace {

struct CommonOpts {
  std::string weather_path;
  bool synthetic_weather = false;
  std::string out_dir;
  double w1 = 1.0;
  double w2 = 1.0;
  ComfortParams comfort;
  OrientDescentConfig descent;
  int jobs = 1;
};

void add_weight_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--w1", o.w1, "Underheating weight")->check(CLI::NonNegativeNumber);
  cmd->add_option("--w2", o.w2, "Overheating weight")->check(CLI::NonNegativeNumber);
  cmd->add_option("--comfort-alpha", o.comfort.alpha,
                  "Running-mean smoothing constant");
  cmd->add_option("--comfort-slope", o.comfort.slope,
                  "Comfort temperature slope vs running mean");
  cmd->add_option("--comfort-intercept", o.comfort.intercept,
                  "Comfort temperature intercept, degC");
  cmd->add_option("--comfort-half-width", o.comfort.half_width,
                  "Half-width of the comfort band, K");
  cmd->add_option("--comfort-clamp-low", o.comfort.clamp_low,
                  "Lower running-mean clamp, degC");
  cmd->add_option("--comfort-clamp-high", o.comfort.clamp_high,
                  "Upper running-mean clamp, degC");
}

void add_weather_flags(CLI::App* cmd, CommonOpts& o, bool require) {
  auto* w = cmd->add_option("--weather", o.weather_path, "Weather CSV path");
  auto* s = cmd->add_flag("--synthetic-weather", o.synthetic_weather,
                          "Use the built-in synthetic year instead of a file");
  w->excludes(s);
  s->excludes(w);
  if (require) {
    cmd->callback([&o] {
      if (o.weather_path.empty() && !o.synthetic_weather)
        throw CLI::ValidationError(
            "either --weather or --synthetic-weather is required");
    });
  }
}

void add_descent_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--initial-step", o.descent.initial_step,
                  "First orientation step, deg");
  cmd->add_option("--min-step", o.descent.min_step,
                  "Smallest orientation step, deg");
  cmd->add_option("--decay", o.descent.decay, "Step divisor on failure");
  cmd->add_option("--max-evals", o.descent.max_evals,
                  "Evaluation budget per orientation invocation");
  cmd->add_flag("--reset-on-success", o.descent.reset_on_success,
                "Restore the full step size after an accepted move");
}

WeatherSeries load_weather_opts(const CommonOpts& o) {
  if (o.synthetic_weather) return make_synthetic_weather();
  return load_weather_file(o.weather_path);
}

// Inputs must exist before any output is produced.
bool check_inputs(const std::vector<std::string>& paths) {
  bool ok = true;
  for (const auto& p : paths) {
    if (!fs::exists(p)) {
      std::cerr << "error: no such file: " << p << "\n";
      ok = false;
    }
  }
  return ok;
}

std::string sanitize_id(const std::string& id) {
  std::string out = id.empty() ? std::string("plan") : id;
  for (char& c : out)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '_' &&
        c != '-')
      c = '_';
  return out;
}

ordered_json config_echo(const CommonOpts& o, bool with_descent) {
  ordered_json j;
  j["weather"] = o.synthetic_weather ? std::string("synthetic") : o.weather_path;
  j["weights"] = {{"w1", o.w1}, {"w2", o.w2}};
  j["comfort"] = {{"alpha", o.comfort.alpha},
                  {"slope", o.comfort.slope},
                  {"intercept", o.comfort.intercept},
                  {"half_width", o.comfort.half_width},
                  {"clamp_low", o.comfort.clamp_low},
                  {"clamp_high", o.comfort.clamp_high}};
  if (with_descent)
    j["descent"] = {{"initial_step", o.descent.initial_step},
                    {"min_step", o.descent.min_step},
                    {"decay", o.descent.decay},
                    {"max_evals", o.descent.max_evals},
                    {"reset_on_success", o.descent.reset_on_success}};
  return j;
}

std::string with_config(const std::string& report_json, const ordered_json& cfg) {
  ordered_json j = ordered_json::parse(report_json);
  j["config"] = cfg;
  return j.dump(2) + "\n";
}

DesignProgram load_program_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  ordered_json j = ordered_json::parse(in, nullptr, true);
  DesignProgram program;
  if (!j.is_object() || !j.contains("spaces") || !j["spaces"].is_array())
    throw std::runtime_error(path + ": expected {\"spaces\": [...]}");
  for (const auto& e : j["spaces"]) {
    ProgramEntry entry;
    entry.name = e.at("name").get<std::string>();
    entry.target_area = e.at("area").get<double>();
    if (e.contains("internal_gain"))
      entry.internal_gain = e["internal_gain"].get<double>();
    program.entries.push_back(std::move(entry));
  }
  return program;
}

void print_unique_warnings(const std::vector<std::string>& warnings) {
  std::set<std::string> seen;
  for (const auto& w : warnings)
    if (seen.insert(w).second) std::cerr << "warning: " << w << "\n";
}

// ---------------------------------------------------------------- generate

int cmd_generate(int count, std::uint64_t seed, const std::string& program_path,
                 const std::string& id_prefix, const std::string& out_dir,
                 const std::string& weather_out) {
  if (!program_path.empty() && !check_inputs({program_path})) return 1;
  DesignProgram program = program_path.empty()
                              ? default_dwelling_program()
                              : load_program_file(program_path);
  fs::create_directories(out_dir);
  std::vector<FloorPlan> plans =
      generate_plan_set(program, seed, count, id_prefix);
  for (const auto& plan : plans) {
    const fs::path path =
        fs::path(out_dir) / (sanitize_id(plan.id) + ".plan.json");
    save_plan_file(plan, path);
    std::cout << path.string() << "\n";
  }
  if (!weather_out.empty()) {
    std::ostringstream text;
    write_weather_csv(make_synthetic_weather(), text);
    write_file_atomic(weather_out, text.str());
    std::cout << weather_out << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const CommonOpts& o, const std::string& plan_path) {
  std::vector<std::string> inputs{plan_path};
  if (!o.synthetic_weather) inputs.push_back(o.weather_path);
  if (!check_inputs(inputs)) return 1;

  const FloorPlan plan = load_plan_file(plan_path);
  if (auto errors = validate_plan(plan); !errors.empty()) {
    for (const auto& e : errors) std::cerr << "error: " << plan.id << ": " << e << "\n";
    return 1;
  }
  const WeatherSeries weather = load_weather_opts(o);
  fs::create_directories(o.out_dir);

  Simulator sim(weather);
  const SimulationResult result = sim.simulate(plan);
  print_unique_warnings(result.warnings);

  const auto bands = hourly_comfort_bands(weather, o.comfort);
  const PenaltyReport report =
      total_penalty(result, bands, PenaltyWeights{o.w1, o.w2});

  const std::string stem = sanitize_id(plan.id);
  std::ostringstream temps;
  write_temperature_csv(result, temps);
  write_file_atomic(fs::path(o.out_dir) / (stem + ".temps.csv"), temps.str());
  write_file_atomic(
      fs::path(o.out_dir) / (stem + ".penalty.json"),
      with_config(penalty_report_to_json_string(report), config_echo(o, false)));
  std::cout << "penalty " << report.total << " degree-hours ("
            << plan.spaces.size() << " spaces)\n";
  return 0;
}

// ---------------------------------------------------------------- optimize

int cmd_optimize(const CommonOpts& o, const std::vector<std::string>& plan_paths) {
  std::vector<std::string> inputs = plan_paths;
  if (!o.synthetic_weather) inputs.push_back(o.weather_path);
  if (!check_inputs(inputs)) return 1;

  fs::create_directories(o.out_dir);
  // Refuse configurations that would overwrite an input plan.
  for (const auto& p : plan_paths) {
    const fs::path in_file = fs::weakly_canonical(p);
    FloorPlan probe;
    try {
      probe = load_plan_file(p);
    } catch (...) {
      continue;  // parse failures become per-plan failures below
    }
    const fs::path out_file = fs::weakly_canonical(
        fs::path(o.out_dir) / (sanitize_id(probe.id) + ".plan.json"));
    if (in_file == out_file) {
      std::cerr << "error: output would overwrite input " << p
                << "; choose a different --out\n";
      return 1;
    }
  }

  const WeatherSeries weather = load_weather_opts(o);
  const PenaltyEvaluator evaluator(weather, PenaltyWeights{o.w1, o.w2},
                                   o.comfort);
  const ordered_json cfg = config_echo(o, true);

  std::atomic<int> failures{0};
  std::mutex io_mutex;
  parallel_for(plan_paths.size(), o.jobs, [&](std::size_t i) {
    const std::string& path = plan_paths[i];
    try {
      FloorPlan plan = load_plan_file(path);
      const PipelineReport report = run_pipeline(plan, evaluator, o.descent);
      const std::string stem = sanitize_id(plan.id);
      write_file_atomic(
          fs::path(o.out_dir) / (stem + ".report.json"),
          with_config(pipeline_report_to_json_string(report), cfg));
      save_plan_file(plan, fs::path(o.out_dir) / (stem + ".plan.json"));
      std::lock_guard<std::mutex> lock(io_mutex);
      std::cout << plan.id << ": " << report.initial_penalty << " -> "
                << report.final_penalty << " degree-hours, "
                << report.total_simulations << " simulations\n";
    } catch (const std::exception& e) {
      ++failures;
      std::lock_guard<std::mutex> lock(io_mutex);
      std::cerr << "error: " << path << ": " << e.what() << "\n";
    }
  });
  return failures.load() == 0 ? 0 : 2;
}

// ------------------------------------------------------------------- curve

int cmd_curve(const CommonOpts& o, const std::vector<std::string>& plan_paths,
              int resolution, bool align_max) {
  std::vector<std::string> inputs = plan_paths;
  if (!o.synthetic_weather) inputs.push_back(o.weather_path);
  if (!check_inputs(inputs)) return 1;

  const WeatherSeries weather = load_weather_opts(o);
  const PenaltyEvaluator evaluator(weather, PenaltyWeights{o.w1, o.w2},
                                   o.comfort);
  fs::create_directories(o.out_dir);

  const int inner_jobs = plan_paths.size() == 1 ? o.jobs : 1;
  std::atomic<int> failures{0};
  std::mutex io_mutex;
  parallel_for(plan_paths.size(), o.jobs, [&](std::size_t i) {
    const std::string& path = plan_paths[i];
    try {
      const FloorPlan plan = load_plan_file(path);
      if (auto errors = validate_plan(plan); !errors.empty())
        throw std::runtime_error(errors.front());
      OrientationCurve curve =
          orientation_curve(plan, evaluator, resolution, inner_jobs);
      if (align_max) curve = align_curve_to_max(curve);
      const fs::path out =
          fs::path(o.out_dir) / (sanitize_id(plan.id) + ".curve.csv");
      write_curve_csv_file(curve, plan.id, out.string());
      std::lock_guard<std::mutex> lock(io_mutex);
      std::cout << out.string() << "\n";
    } catch (const std::exception& e) {
      ++failures;
      std::lock_guard<std::mutex> lock(io_mutex);
      std::cerr << "error: " << path << ": " << e.what() << "\n";
    }
  });
  return failures.load() == 0 ? 0 : 2;
}

// --------------------------------------------------------------- benchmark

int cmd_benchmark(const CommonOpts& o, const std::vector<std::string>& plan_paths,
                  int plans_count, std::uint64_t seed,
                  const std::string& program_path) {
  std::vector<std::string> inputs = plan_paths;
  if (!o.weather_path.empty()) inputs.push_back(o.weather_path);
  if (!program_path.empty()) inputs.push_back(program_path);
  if (!check_inputs(inputs)) return 1;
  if (!plan_paths.empty() && plans_count > 0) {
    std::cerr << "error: use either --plans or --plans-count, not both\n";
    return 1;
  }
  if (plan_paths.empty() && plans_count <= 0) {
    std::cerr << "error: nothing to benchmark; pass --plans or --plans-count\n";
    return 1;
  }

  // benchmark defaults to the synthetic year when no weather file is given.
  const WeatherSeries weather =
      o.weather_path.empty() ? make_synthetic_weather()
                             : load_weather_file(o.weather_path);
  const PenaltyEvaluator evaluator(weather, PenaltyWeights{o.w1, o.w2},
                                   o.comfort);
  fs::create_directories(o.out_dir);

  std::vector<FloorPlan> plans;
  std::vector<BenchmarkEntry> preload_failures;
  if (!plan_paths.empty()) {
    for (const auto& path : plan_paths) {
      try {
        plans.push_back(load_plan_file(path));
      } catch (const std::exception& e) {
        BenchmarkEntry entry;
        entry.plan_id = fs::path(path).stem().string();
        entry.success = false;
        entry.error = e.what();
        preload_failures.push_back(std::move(entry));
      }
    }
  } else {
    DesignProgram program = program_path.empty()
                                ? default_dwelling_program()
                                : load_program_file(program_path);
    plans = generate_plan_set(program, seed, plans_count, "plan");
  }

  BenchmarkReport report;
  if (!plans.empty()) {
    report = run_benchmark(plans, evaluator, o.descent, o.jobs);
  } else {
    report.plan_count = 0;
  }
  for (auto& entry : preload_failures) {
    ++report.plan_count;
    report.entries.push_back(std::move(entry));
  }

  CommonOpts echo = o;
  if (echo.weather_path.empty()) echo.synthetic_weather = true;
  write_file_atomic(fs::path(o.out_dir) / "benchmark.json",
                    with_config(benchmark_report_to_json_string(report),
                                config_echo(echo, true)));

  for (const auto& e : report.entries)
    if (!e.success)
      std::cerr << "error: " << e.plan_id << ": " << e.error << "\n";
  std::cout << "benchmarked " << report.success_count << "/"
            << report.plan_count << " plans, mean amplitude error "
            << report.amplitude_error_pct.mean << "%, "
            << report.total_simulations << " simulations\n";
  return report.success_count == report.plan_count ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Floor-plan thermal performance toolkit"};
  app.require_subcommand(1);

  // generate
  int gen_count = 1;
  std::uint64_t gen_seed = 1;
  std::string gen_program, gen_prefix = "plan", gen_out = ".", gen_weather_out;
  auto* gen = app.add_subcommand("generate", "Generate synthetic floor plans");
  gen->add_option("--count", gen_count, "Number of plans")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "Base seed");
  gen->add_option("--program", gen_program, "Design program JSON");
  gen->add_option("--id-prefix", gen_prefix, "Plan id prefix");
  gen->add_option("--out", gen_out, "Output directory")->required();
  gen->add_option("--weather-out", gen_weather_out,
                  "Also write the synthetic weather CSV here");

  // simulate
  CommonOpts sim_opts;
  std::string sim_plan;
  auto* sim = app.add_subcommand("simulate", "Simulate one plan for a year");
  sim->add_option("--plan", sim_plan, "Plan JSON")->required();
  add_weather_flags(sim, sim_opts, true);
  sim->add_option("--out", sim_opts.out_dir, "Output directory")->required();
  add_weight_flags(sim, sim_opts);

  // optimize
  CommonOpts opt_opts;
  std::vector<std::string> opt_plans;
  auto* opt = app.add_subcommand("optimize", "Run the operator pipeline");
  opt->add_option("--plans", opt_plans, "Plan JSON files")->required();
  add_weather_flags(opt, opt_opts, true);
  opt->add_option("--out", opt_opts.out_dir, "Output directory")->required();
  add_weight_flags(opt, opt_opts);
  add_descent_flags(opt, opt_opts);
  opt->add_option("--jobs", opt_opts.jobs, "Concurrent plans")->check(CLI::PositiveNumber);

  // curve
  CommonOpts cur_opts;
  std::vector<std::string> cur_plans;
  int cur_resolution = 1;
  bool cur_align = false;
  auto* cur = app.add_subcommand("curve", "Exhaustive orientation sweep");
  cur->add_option("--plans", cur_plans, "Plan JSON files")->required();
  add_weather_flags(cur, cur_opts, true);
  cur->add_option("--out", cur_opts.out_dir, "Output directory")->required();
  cur->add_option("--resolution", cur_resolution, "Sweep stride, deg");
  cur->add_flag("--align-max", cur_align, "Shift so the maximum sits at 0 deg");
  add_weight_flags(cur, cur_opts);
  cur->add_option("--jobs", cur_opts.jobs, "Concurrency")->check(CLI::PositiveNumber);

  // benchmark
  CommonOpts bm_opts;
  std::vector<std::string> bm_plans;
  int bm_count = 0;
  std::uint64_t bm_seed = 7;
  std::string bm_program;
  auto* bm = app.add_subcommand(
      "benchmark", "Optimize a plan set and score it against exhaustive curves");
  bm->add_option("--plans", bm_plans, "Plan JSON files");
  bm->add_option("--plans-count", bm_count, "Generate this many plans");
  bm->add_option("--seed", bm_seed, "Generator base seed");
  bm->add_option("--program", bm_program, "Design program JSON");
  bm->add_option("--weather", bm_opts.weather_path,
                 "Weather CSV (default: built-in synthetic year)");
  bm->add_option("--out", bm_opts.out_dir, "Output directory")->required();
  add_weight_flags(bm, bm_opts);
  add_descent_flags(bm, bm_opts);
  bm->add_option("--jobs", bm_opts.jobs, "Concurrent plans")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Collapse CLI11's many exit codes onto the documented contract:
    // 0 for --help/--version, 1 for any usage error.
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed())
      return cmd_generate(gen_count, gen_seed, gen_program, gen_prefix, gen_out,
                          gen_weather_out);
    if (sim->parsed()) return cmd_simulate(sim_opts, sim_plan);
    if (opt->parsed()) return cmd_optimize(opt_opts, opt_plans);
    if (cur->parsed())
      return cmd_curve(cur_opts, cur_plans, cur_resolution, cur_align);
    if (bm->parsed())
      return cmd_benchmark(bm_opts, bm_plans, bm_count, bm_seed, bm_program);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

#include "planopt/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace planopt {

namespace {

// Hand-rolled splitmix64 so generated plans are reproducible across standard
// library implementations (std::shuffle and the distributions are not).
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return (next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform in [0, n).
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) %
           std::max<std::size_t>(n, 1);
  }
};

template <typename T>
void fisher_yates(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[rng.index(i)]);
}

constexpr double kMinSpaceDim = 1.5;      // m
constexpr double kCeilingHeight = 3.4;    // m; tall rooms, period-dwelling style
// Heavyweight masonry construction: hour-scale air capacitance times this
// gives the day-scale time constants of thick-walled dwellings.
constexpr double kCapacitanceMultiplier = 30.0;
constexpr double kWindowAreaFrac = 0.10;  // of space floor area
constexpr double kMinWindowHeight = 0.5;     // m
constexpr double kTargetWindowHeight = 1.3;  // m
constexpr double kMinWindowWidth = 0.5;      // m
constexpr double kEdgeMargin = 0.05;         // clearance at window jambs, m
constexpr int kMaxAttempts = 32;

struct LayoutSpace {
  const ProgramEntry* entry;
  Rect rect;
};

// Splits the shuffled program into `strips` contiguous groups of near-equal
// area.
std::vector<std::vector<const ProgramEntry*>> greedy_groups(
    const std::vector<const ProgramEntry*>& order, int strips) {
  const double total =
      std::accumulate(order.begin(), order.end(), 0.0,
                      [](double a, const ProgramEntry* e) { return a + e->target_area; });

  std::vector<std::vector<const ProgramEntry*>> groups;
  groups.emplace_back();
  double remaining = total;
  double group_area = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t left = order.size() - i;
    const int groups_left = strips - static_cast<int>(groups.size());
    // Close the group once it reaches its fair share, as long as enough
    // spaces remain to populate every later strip.
    const double target = remaining / (groups_left + 1);
    if (!groups.back().empty() && group_area + order[i]->target_area / 2 > target &&
        static_cast<std::size_t>(groups_left) < left) {
      remaining -= group_area;
      group_area = 0.0;
      groups.emplace_back();
    }
    groups.back().push_back(order[i]);
    group_area += order[i]->target_area;
  }
  return groups;
}

// Three-strip dwelling split: the smallest spaces form a service core in the
// middle strip so the principal rooms face the two long facades.  The core's
// two smallest members take its ends, keeping only a sliver of gable wall
// (and the small window that goes with it); the larger service spaces sit
// between them, fully interior.  The principal rooms are balanced across the
// two facades, glazing included, the way a double-fronted dwelling splits its
// good rooms; the back strip mirrors the front strip's widths in reverse, so
// the two facades carry the same room line-up read from opposite corners.
// Falls back to the near-equal split when the program is too small to carve a
// core of workable height.
std::vector<std::vector<const ProgramEntry*>> dwelling_groups(
    const std::vector<const ProgramEntry*>& order, double width, Rng& rng) {
  std::vector<const ProgramEntry*> asc = order;
  std::stable_sort(asc.begin(), asc.end(),
                   [](const ProgramEntry* a, const ProgramEntry* b) {
                     return a->target_area < b->target_area;
                   });

  std::vector<const ProgramEntry*> core;
  double core_area = 0.0;
  std::size_t i = 0;
  while (i < asc.size() && asc.size() - i > 2 &&
         core_area < kMinSpaceDim * 1.05 * width) {
    core_area += asc[i]->target_area;
    core.push_back(asc[i++]);
  }
  if (core_area < kMinSpaceDim * width || asc.size() - i < 2) return {};

  // Ends get the core's two smallest members; the rest sit between them.
  std::sort(core.begin(), core.end(),
            [](const ProgramEntry* a, const ProgramEntry* b) {
              return a->target_area < b->target_area;
            });
  std::vector<const ProgramEntry*> mid(core.begin() + std::min<std::size_t>(2, core.size()),
                                       core.end());
  fisher_yates(mid, rng);
  std::vector<const ProgramEntry*> core_row;
  core_row.push_back(core[0]);
  core_row.insert(core_row.end(), mid.begin(), mid.end());
  if (core.size() > 1) core_row.push_back(core[1]);

  std::vector<const ProgramEntry*> rooms(asc.begin() + i, asc.end());
  std::sort(rooms.begin(), rooms.end(),
            [](const ProgramEntry* a, const ProgramEntry* b) {
              return a->target_area > b->target_area;
            });
  std::vector<const ProgramEntry*> front, back;
  double front_area = 0.0, back_area = 0.0;
  for (const ProgramEntry* r : rooms) {
    if (front_area <= back_area) {
      front.push_back(r);
      front_area += r->target_area;
    } else {
      back.push_back(r);
      back_area += r->target_area;
    }
  }
  fisher_yates(front, rng);
  // Pair each front room with its closest-area counterpart opposite, largest
  // first so the pairing is stable, then reverse the row.
  {
    std::vector<const ProgramEntry*> pool = back, mirrored;
    for (const ProgramEntry* f : front) {
      auto best = std::min_element(pool.begin(), pool.end(),
                                   [&](const ProgramEntry* a, const ProgramEntry* b) {
                                     return std::abs(a->target_area - f->target_area) <
                                            std::abs(b->target_area - f->target_area);
                                   });
      mirrored.push_back(*best);
      pool.erase(best);
    }
    std::reverse(mirrored.begin(), mirrored.end());
    back = std::move(mirrored);
  }
  if (rng.next() & 1) std::swap(front, back);

  return {std::move(front), std::move(core_row), std::move(back)};
}

// Tiles the grouped program: strips stacked along y, spaces side by side
// along x.  Returns false when any resulting dimension drops below
// kMinSpaceDim.
bool pack_strips(const std::vector<std::vector<const ProgramEntry*>>& groups,
                 double width, double height, int strips,
                 std::vector<LayoutSpace>& out) {
  if (static_cast<int>(groups.size()) != strips) return false;
  for (const auto& g : groups)
    if (g.empty()) return false;

  out.clear();
  double y = 0.0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    double strip_area = 0.0;
    for (const auto* e : groups[g]) strip_area += e->target_area;
    double strip_h = strip_area / width;
    if (g + 1 == groups.size()) strip_h = height - y;  // snap: watertight tiling
    if (strip_h < kMinSpaceDim) return false;
    double x = 0.0;
    for (std::size_t k = 0; k < groups[g].size(); ++k) {
      double w = groups[g][k]->target_area / strip_h;
      if (k + 1 == groups[g].size()) w = width - x;
      if (w < kMinSpaceDim) return false;
      out.push_back({groups[g][k], Rect{x, y, w, strip_h}});
      x += w;
    }
    y += strip_h;
  }
  return true;
}

// One window per boundary-touching space: exactly 10% of floor area, centered
// on the longest exterior segment.  Returns false if no segment can hold it.
bool place_window(FloorPlan& plan, std::size_t space_index) {
  Space& space = plan.spaces[space_index];
  WallSide best_side = WallSide::PlanNorth;
  Interval best{0.0, 0.0};
  for (WallSide side : {WallSide::PlanNorth, WallSide::PlanEast,
                        WallSide::PlanSouth, WallSide::PlanWest}) {
    for (const Interval& iv : exterior_intervals(plan, space_index, side)) {
      if (iv.length() > best.length()) {
        best = iv;
        best_side = side;
      }
    }
  }
  if (best.length() <= 2 * kEdgeMargin) return false;

  const double area = kWindowAreaFrac * space.floor_area();
  const double max_width = best.length() - 2 * kEdgeMargin;

  // Prefer a casement-like proportion; fall back to a lower sill and then a
  // wider opening when the wall segment is short relative to the area.
  double height = kTargetWindowHeight;
  double width = area / height;
  if (width < kMinWindowWidth) {
    width = kMinWindowWidth;
    height = area / width;
  }
  if (width > max_width) {
    width = max_width;
    height = area / width;
  }
  double sill = 0.9;
  if (height > space.ceiling_height - sill) {
    sill = 0.5;
    if (height > space.ceiling_height - sill) {
      height = space.ceiling_height - sill - kEdgeMargin;
      if (height < kMinWindowHeight) return false;
      width = area / height;
      if (width > max_width) return false;
    }
  }

  Window w;
  w.wall_side = best_side;
  w.width = width;
  w.height = height;
  w.sill = sill;
  w.offset = best.lo + (best.length() - width) / 2;
  space.windows.push_back(w);
  return true;
}

bool attempt(const DesignProgram& program, Rng& rng, const std::string& id,
             FloorPlan& out) {
  const double total = program.total_area();
  // Wide, shallow footprints: facade-strip rooms come out wider than their
  // strip is tall, so their longest exterior wall is the facade itself.
  const double aspect = rng.uniform(1.65, 1.8);
  const double width = std::sqrt(total * aspect);
  const double height = total / width;

  std::vector<const ProgramEntry*> order;
  order.reserve(program.entries.size());
  for (const auto& e : program.entries) order.push_back(&e);
  fisher_yates(order, rng);

  const int strips = std::clamp(
      static_cast<int>(std::lround(std::sqrt(static_cast<double>(order.size())))),
      1, static_cast<int>(order.size()));

  std::vector<std::vector<const ProgramEntry*>> groups;
  if (strips == 3) groups = dwelling_groups(order, width, rng);
  if (groups.empty()) groups = greedy_groups(order, strips);

  std::vector<LayoutSpace> layout;
  if (!pack_strips(groups, width, height, strips, layout)) return false;

  FloorPlan plan;
  plan.id = id;
  plan.orientation_deg = std::floor(rng.uniform(0.0, 360.0));
  plan.envelope.capacitance_multiplier = kCapacitanceMultiplier;
  for (const auto& ls : layout) {
    Space s;
    s.name = ls.entry->name;
    s.rect = ls.rect;
    s.ceiling_height = kCeilingHeight;
    s.internal_gain = ls.entry->internal_gain;
    plan.spaces.push_back(std::move(s));
  }

  for (std::size_t i = 0; i < plan.spaces.size(); ++i) {
    double exterior = 0.0;
    for (WallSide side : {WallSide::PlanNorth, WallSide::PlanEast,
                          WallSide::PlanSouth, WallSide::PlanWest})
      exterior += exterior_length(plan, i, side);
    if (exterior <= 1e-9) continue;  // fully interior space: no window
    if (!place_window(plan, i)) return false;
  }

  const auto errors = validate_plan(plan);
  if (!errors.empty()) return false;
  out = std::move(plan);
  return true;
}

}  // namespace

double DesignProgram::total_area() const {
  double a = 0.0;
  for (const auto& e : entries) a += e.target_area;
  return a;
}

DesignProgram default_dwelling_program() {
  DesignProgram p;
  p.entries = {
      {"hall", 7.5, 4.0},    {"kitchen", 12.0, 4.0}, {"living", 16.0, 4.0},
      {"dining", 16.0, 4.0}, {"corridor", 6.0, 4.0},    {"bath1", 4.5, 4.0},
      {"bath2", 4.5, 4.0},   {"bed1", 12.0, 4.0},    {"bed2", 11.0, 4.0},
      {"bed3", 11.0, 4.0},
  };
  return p;
}

FloorPlan generate_synthetic_plan(const DesignProgram& program,
                                  std::uint64_t seed, std::string id) {
  if (program.entries.empty())
    throw std::invalid_argument("empty design program");
  for (const auto& e : program.entries)
    if (e.target_area <= 0)
      throw std::invalid_argument("non-positive area for space \"" + e.name +
                                  "\"");
  for (int k = 0; k < kMaxAttempts; ++k) {
    // Remix per attempt so a failed layout explores a fresh ordering.
    Rng rng(seed * 0x2545f4914f6cdd1dull + static_cast<std::uint64_t>(k));
    FloorPlan plan;
    if (attempt(program, rng, id, plan)) return plan;
  }
  throw std::runtime_error("infeasible program");
}

std::vector<FloorPlan> generate_plan_set(const DesignProgram& program,
                                         std::uint64_t base_seed, int count,
                                         const std::string& id_prefix) {
  std::vector<FloorPlan> plans;
  plans.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int k = 0; k < count; ++k) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s-%04d", id_prefix.c_str(), k);
    plans.push_back(generate_synthetic_plan(program, base_seed + k, buf));
  }
  return plans;
}

}  // namespace planopt

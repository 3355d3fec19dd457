#include "planopt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace planopt {

namespace {

constexpr double kGeomEps = 1e-9;

std::string space_prefix(const Space& s) { return "space " + s.name; }

std::string window_prefix(const Space& s, std::size_t wi) {
  return "space " + s.name + " window " + std::to_string(wi);
}

}  // namespace

const char* to_string(WallSide side) {
  switch (side) {
    case WallSide::PlanNorth: return "plan-north";
    case WallSide::PlanEast: return "plan-east";
    case WallSide::PlanSouth: return "plan-south";
    case WallSide::PlanWest: return "plan-west";
  }
  return "plan-south";
}

std::optional<WallSide> wall_side_from_string(std::string_view s) {
  if (s == "plan-north") return WallSide::PlanNorth;
  if (s == "plan-east") return WallSide::PlanEast;
  if (s == "plan-south") return WallSide::PlanSouth;
  if (s == "plan-west") return WallSide::PlanWest;
  return std::nullopt;
}

double Space::wall_length(WallSide side) const {
  switch (side) {
    case WallSide::PlanNorth:
    case WallSide::PlanSouth:
      return rect.w;
    case WallSide::PlanEast:
    case WallSide::PlanWest:
      return rect.h;
  }
  return rect.w;
}

double base_azimuth(WallSide side) {
  switch (side) {
    case WallSide::PlanNorth: return 0.0;
    case WallSide::PlanEast: return 90.0;
    case WallSide::PlanSouth: return 180.0;
    case WallSide::PlanWest: return 270.0;
  }
  return 0.0;
}

double normalize_angle_deg(double deg) {
  double a = std::fmod(deg, 360.0);
  if (a < 0.0) a += 360.0;
  return a;
}

double facade_azimuth(WallSide side, double orientation_deg) {
  return normalize_angle_deg(base_azimuth(side) + orientation_deg);
}

double facade_azimuth(const Window& window, const FloorPlan& plan) {
  return facade_azimuth(window.wall_side, plan.orientation_deg);
}

std::vector<Interval> exterior_intervals(const FloorPlan& plan,
                                         std::size_t space_index,
                                         WallSide side) {
  const Space& sp = plan.spaces[space_index];
  const Rect& r = sp.rect;
  const double len = sp.wall_length(side);

  // Collect stretches of this side covered by a neighbouring space whose edge
  // coincides with the side's line.
  std::vector<Interval> covered;
  for (std::size_t j = 0; j < plan.spaces.size(); ++j) {
    if (j == space_index) continue;
    const Rect& n = plan.spaces[j].rect;
    bool touches = false;
    double lo = 0.0, hi = 0.0;
    switch (side) {
      case WallSide::PlanNorth:
        touches = std::abs(n.min_y() - r.max_y()) <= kGeomEps;
        lo = std::max(r.min_x(), n.min_x()) - r.min_x();
        hi = std::min(r.max_x(), n.max_x()) - r.min_x();
        break;
      case WallSide::PlanSouth:
        touches = std::abs(n.max_y() - r.min_y()) <= kGeomEps;
        lo = std::max(r.min_x(), n.min_x()) - r.min_x();
        hi = std::min(r.max_x(), n.max_x()) - r.min_x();
        break;
      case WallSide::PlanEast:
        touches = std::abs(n.min_x() - r.max_x()) <= kGeomEps;
        lo = std::max(r.min_y(), n.min_y()) - r.min_y();
        hi = std::min(r.max_y(), n.max_y()) - r.min_y();
        break;
      case WallSide::PlanWest:
        touches = std::abs(n.max_x() - r.min_x()) <= kGeomEps;
        lo = std::max(r.min_y(), n.min_y()) - r.min_y();
        hi = std::min(r.max_y(), n.max_y()) - r.min_y();
        break;
    }
    if (touches && hi - lo > kGeomEps) covered.push_back({lo, hi});
  }

  std::sort(covered.begin(), covered.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });

  std::vector<Interval> free;
  double cursor = 0.0;
  for (const Interval& c : covered) {
    if (c.lo - cursor > kGeomEps) free.push_back({cursor, std::max(cursor, c.lo)});
    cursor = std::max(cursor, c.hi);
  }
  if (len - cursor > kGeomEps) free.push_back({cursor, len});
  return free;
}

double exterior_length(const FloorPlan& plan, std::size_t space_index,
                       WallSide side) {
  double total = 0.0;
  for (const Interval& iv : exterior_intervals(plan, space_index, side))
    total += iv.length();
  return total;
}

bool window_on_exterior(const FloorPlan& plan, std::size_t space_index,
                        const Window& window) {
  const double lo = window.offset;
  const double hi = window.offset + window.width;
  for (const Interval& iv :
       exterior_intervals(plan, space_index, window.wall_side)) {
    if (lo >= iv.lo - kGeomEps && hi <= iv.hi + kGeomEps) return true;
  }
  return false;
}

std::vector<std::string> validate_plan(const FloorPlan& plan) {
  std::vector<std::string> out;

  if (!(plan.orientation_deg >= 0.0 && plan.orientation_deg < 360.0)) {
    std::ostringstream os;
    os << "orientation out of range (" << plan.orientation_deg
       << " not in [0, 360))";
    out.push_back(os.str());
  }
  if (plan.spaces.empty()) out.push_back("plan has no spaces");

  const EnvelopeProperties& env = plan.envelope;
  if (!(env.shgc > 0.0 && env.shgc <= 1.0))
    out.push_back("envelope shgc out of range (0, 1]");
  if (env.capacitance_multiplier < 1.0)
    out.push_back("envelope capacitance multiplier below 1");
  if (env.wall_u <= 0.0 || env.window_u <= 0.0)
    out.push_back("envelope has nonpositive U-value");

  // Pairwise interior overlap, reported once per pair.
  for (std::size_t i = 0; i < plan.spaces.size(); ++i) {
    for (std::size_t j = i + 1; j < plan.spaces.size(); ++j) {
      const Rect& a = plan.spaces[i].rect;
      const Rect& b = plan.spaces[j].rect;
      const double ox = std::min(a.max_x(), b.max_x()) - std::max(a.min_x(), b.min_x());
      const double oy = std::min(a.max_y(), b.max_y()) - std::max(a.min_y(), b.min_y());
      if (ox > kGeomEps && oy > kGeomEps) {
        const std::string& na = plan.spaces[i].name;
        const std::string& nb = plan.spaces[j].name;
        out.push_back("spaces " + std::min(na, nb) + " and " + std::max(na, nb) +
                      " overlap");
      }
    }
  }

  // Per-space checks, ordered by space name then window index.
  std::vector<std::size_t> order(plan.spaces.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (plan.spaces[a].name != plan.spaces[b].name)
      return plan.spaces[a].name < plan.spaces[b].name;
    return a < b;
  });

  for (std::size_t si : order) {
    const Space& sp = plan.spaces[si];
    if (sp.rect.w <= 0.0 || sp.rect.h <= 0.0)
      out.push_back(space_prefix(sp) + ": nonpositive footprint dimension");
    if (sp.ceiling_height <= 0.0)
      out.push_back(space_prefix(sp) + ": nonpositive ceiling height");
    if (sp.internal_gain < 0.0)
      out.push_back(space_prefix(sp) + ": negative internal gain");

    double width_by_side[kWallSideCount] = {0, 0, 0, 0};
    for (std::size_t wi = 0; wi < sp.windows.size(); ++wi) {
      const Window& w = sp.windows[wi];
      const double wall_len = sp.wall_length(w.wall_side);
      if (w.width <= 0.0 || w.height <= 0.0) {
        out.push_back(window_prefix(sp, wi) + ": nonpositive window size");
        continue;
      }
      width_by_side[static_cast<std::size_t>(w.wall_side)] += w.width;
      if (w.offset < -kGeomEps || w.offset + w.width > wall_len + kGeomEps)
        out.push_back(window_prefix(sp, wi) + ": window exceeds wall");
      if (w.sill < -kGeomEps || w.sill + w.height > sp.ceiling_height + kGeomEps)
        out.push_back(window_prefix(sp, wi) + ": window exceeds ceiling");
      if (w.overhang && w.overhang->depth < 0.0)
        out.push_back(window_prefix(sp, wi) + ": negative overhang depth");
      if (w.fins && (w.fins->left_depth < 0.0 || w.fins->right_depth < 0.0))
        out.push_back(window_prefix(sp, wi) + ": negative fin depth");
      if (!window_on_exterior(plan, si, w))
        out.push_back(window_prefix(sp, wi) + ": window not on exterior wall");
    }
    for (std::size_t s = 0; s < kWallSideCount; ++s) {
      const WallSide side = static_cast<WallSide>(s);
      if (width_by_side[s] > sp.wall_length(side) + kGeomEps)
        out.push_back(space_prefix(sp) + ": windows exceed wall " +
                      to_string(side));
    }
  }

  return out;
}

}  // namespace planopt

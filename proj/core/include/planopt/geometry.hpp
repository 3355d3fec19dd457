#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace planopt {

/// Side of a space rectangle in the unrotated plan frame.
/// Base facade azimuths (degrees clockwise from true north, outward normal):
/// plan-north 0, plan-east 90, plan-south 180, plan-west 270. The whole plan
/// rotates rigidly by FloorPlan::orientation_deg.
enum class WallSide { PlanNorth, PlanEast, PlanSouth, PlanWest };

constexpr std::size_t kWallSideCount = 4;

const char* to_string(WallSide side);
std::optional<WallSide> wall_side_from_string(std::string_view s);

/// Axis-aligned rectangle in the plan frame, all lengths in meters.
struct Rect {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double min_x() const { return x; }
  double max_x() const { return x + w; }
  double min_y() const { return y; }
  double max_y() const { return y + h; }
  double area() const { return w * h; }
};

/// Horizontal shading projection above the window head.
struct Overhang {
  double depth = 0.0;  // m
};

/// Vertical shading projections at the window jambs.
struct FinPair {
  double left_depth = 0.0;   // m
  double right_depth = 0.0;  // m
};

/// Window on one side of a space rectangle. `offset` is measured along the
/// wall from its start corner: the min-x corner for plan-north/plan-south
/// walls, the min-y corner for plan-east/plan-west walls.
struct Window {
  WallSide wall_side = WallSide::PlanSouth;
  double offset = 0.0;  // m from wall start
  double width = 0.0;   // m
  double height = 0.0;  // m
  double sill = 0.0;    // m above floor
  std::optional<Overhang> overhang;
  std::optional<FinPair> fins;

  double area() const { return width * height; }
};

/// One thermal zone. Interior partitions carry no windows.
struct Space {
  std::string name;
  Rect rect;
  double ceiling_height = 2.7;  // m
  double internal_gain = 0.0;   // W/m2 of floor area
  std::vector<Window> windows;

  double floor_area() const { return rect.area(); }
  double volume() const { return rect.area() * ceiling_height; }
  double wall_length(WallSide side) const;
};

struct SiteInfo {
  double latitude = 40.2;   // deg, north positive
  double longitude = -8.4;  // deg, east positive
  double elevation = 50.0;  // m
};

struct EnvelopeProperties {
  double wall_u = 0.7;                  // W/m2K, exterior opaque
  double window_u = 2.8;                // W/m2K
  double shgc = 0.7;                    // solar heat gain coefficient, (0,1]
  double capacitance_multiplier = 5.0;  // effective-mass correction, >= 1
};

struct FloorPlan {
  std::string id;
  double orientation_deg = 0.0;  // [0, 360)
  SiteInfo site;
  EnvelopeProperties envelope;
  std::vector<Space> spaces;
};

/// Checks every plan invariant and returns one entry per violation, in a
/// deterministic order (plan-level first, then by space name and window
/// index). An empty result means the plan is valid.
std::vector<std::string> validate_plan(const FloorPlan& plan);

double base_azimuth(WallSide side);

/// Outward facade normal azimuth after applying the plan rotation,
/// degrees clockwise from true north in [0, 360).
double facade_azimuth(WallSide side, double orientation_deg);
double facade_azimuth(const Window& window, const FloorPlan& plan);

double normalize_angle_deg(double deg);

/// Half-open stretch [lo, hi) of a wall, in the wall's offset coordinate.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

/// Maximal stretches of the given side of spaces[space_index] that are not
/// shared with any other space, i.e. that face outdoors. Empty when the side
/// is fully interior.
std::vector<Interval> exterior_intervals(const FloorPlan& plan,
                                         std::size_t space_index,
                                         WallSide side);

/// Total exterior run length of one side.
double exterior_length(const FloorPlan& plan, std::size_t space_index,
                       WallSide side);

/// True when [window.offset, window.offset + window.width] lies entirely on
/// exterior stretches of its wall.
bool window_on_exterior(const FloorPlan& plan, std::size_t space_index,
                        const Window& window);

}  // namespace planopt

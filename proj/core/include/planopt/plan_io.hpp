#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "planopt/geometry.hpp"

namespace planopt {

/// Floor-plan JSON: top-level `id`, `orientation_deg`,
/// `site{latitude,longitude,elevation}`,
/// `envelope{wall_u,window_u,shgc,capacitance_multiplier}`, `spaces[]` each
/// with `name,rect{x,y,w,h},ceiling_height,internal_gain,windows[]`; windows
/// carry `wall_side,offset,width,height,sill,overhang{depth}?,fins{left,right}?`.
/// Lengths in meters, angles in degrees.
std::string plan_to_json_string(const FloorPlan& plan, int indent = 2);
FloorPlan plan_from_json_string(const std::string& text);

FloorPlan load_plan_file(const std::filesystem::path& path);
void save_plan_file(const FloorPlan& plan, const std::filesystem::path& path);

/// Writes `text` to `path` via a temp file and rename, so a concurrent reader
/// never sees a half-written file.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& text);

}  // namespace planopt

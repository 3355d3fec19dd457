#include "planopt/plan_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <nlohmann/json.hpp>

namespace planopt {

namespace {

using nlohmann::json;

const char* side_to_string(WallSide side) {
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
  throw std::logic_error("unknown wall side");
}

WallSide side_from_string(const std::string& s) {
  if (s == "plan-north") return WallSide::PlanNorth;
  if (s == "plan-east") return WallSide::PlanEast;
  if (s == "plan-south") return WallSide::PlanSouth;
  if (s == "plan-west") return WallSide::PlanWest;
  throw std::runtime_error("unknown wall_side \"" + s + "\"");
}

json window_to_json(const Window& w) {
  json j{{"wall_side", side_to_string(w.wall_side)},
         {"offset", w.offset},
         {"width", w.width},
         {"height", w.height},
         {"sill", w.sill}};
  if (w.overhang) j["overhang"] = {{"depth", w.overhang->depth}};
  if (w.fins)
    j["fins"] = {{"left", w.fins->left_depth}, {"right", w.fins->right_depth}};
  return j;
}

json space_to_json(const Space& s) {
  json windows = json::array();
  for (const auto& w : s.windows) windows.push_back(window_to_json(w));
  return json{{"name", s.name},
              {"rect",
               {{"x", s.rect.x},
                {"y", s.rect.y},
                {"w", s.rect.w},
                {"h", s.rect.h}}},
              {"ceiling_height", s.ceiling_height},
              {"internal_gain", s.internal_gain},
              {"windows", std::move(windows)}};
}

double require_number(const json& j, const char* key, const std::string& ctx) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number())
    throw std::runtime_error(ctx + ": missing or non-numeric \"" + key + "\"");
  return it->get<double>();
}

std::string require_string(const json& j, const char* key,
                           const std::string& ctx) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string())
    throw std::runtime_error(ctx + ": missing or non-string \"" + key + "\"");
  return it->get<std::string>();
}

Window window_from_json(const json& j, const std::string& ctx) {
  Window w;
  w.wall_side = side_from_string(require_string(j, "wall_side", ctx));
  w.offset = require_number(j, "offset", ctx);
  w.width = require_number(j, "width", ctx);
  w.height = require_number(j, "height", ctx);
  w.sill = require_number(j, "sill", ctx);
  if (auto it = j.find("overhang"); it != j.end() && !it->is_null()) {
    Overhang o;
    o.depth = require_number(*it, "depth", ctx + " overhang");
    w.overhang = o;
  }
  if (auto it = j.find("fins"); it != j.end() && !it->is_null()) {
    FinPair f;
    f.left_depth = require_number(*it, "left", ctx + " fins");
    f.right_depth = require_number(*it, "right", ctx + " fins");
    w.fins = f;
  }
  return w;
}

Space space_from_json(const json& j) {
  Space s;
  s.name = require_string(j, "name", "space");
  const std::string ctx = "space \"" + s.name + "\"";
  auto rit = j.find("rect");
  if (rit == j.end() || !rit->is_object())
    throw std::runtime_error(ctx + ": missing \"rect\"");
  s.rect.x = require_number(*rit, "x", ctx + " rect");
  s.rect.y = require_number(*rit, "y", ctx + " rect");
  s.rect.w = require_number(*rit, "w", ctx + " rect");
  s.rect.h = require_number(*rit, "h", ctx + " rect");
  s.ceiling_height = require_number(j, "ceiling_height", ctx);
  s.internal_gain = require_number(j, "internal_gain", ctx);
  if (auto wit = j.find("windows"); wit != j.end()) {
    if (!wit->is_array()) throw std::runtime_error(ctx + ": \"windows\" must be an array");
    for (const auto& wj : *wit)
      s.windows.push_back(window_from_json(wj, ctx + " window"));
  }
  return s;
}

}  // namespace

std::string plan_to_json_string(const FloorPlan& plan, int indent) {
  json spaces = json::array();
  for (const auto& s : plan.spaces) spaces.push_back(space_to_json(s));
  json j{{"id", plan.id},
         {"orientation_deg", plan.orientation_deg},
         {"site",
          {{"latitude", plan.site.latitude},
           {"longitude", plan.site.longitude},
           {"elevation", plan.site.elevation}}},
         {"envelope",
          {{"wall_u", plan.envelope.wall_u},
           {"window_u", plan.envelope.window_u},
           {"shgc", plan.envelope.shgc},
           {"capacitance_multiplier", plan.envelope.capacitance_multiplier}}},
         {"spaces", std::move(spaces)}};
  return j.dump(indent) + "\n";
}

FloorPlan plan_from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("plan json: ") + e.what());
  }
  if (!j.is_object()) throw std::runtime_error("plan json: root must be an object");
  FloorPlan plan;
  plan.id = require_string(j, "id", "plan");
  plan.orientation_deg = require_number(j, "orientation_deg", "plan");
  if (auto it = j.find("site"); it != j.end() && it->is_object()) {
    plan.site.latitude = require_number(*it, "latitude", "site");
    plan.site.longitude = require_number(*it, "longitude", "site");
    plan.site.elevation = require_number(*it, "elevation", "site");
  }
  if (auto it = j.find("envelope"); it != j.end() && it->is_object()) {
    plan.envelope.wall_u = require_number(*it, "wall_u", "envelope");
    plan.envelope.window_u = require_number(*it, "window_u", "envelope");
    plan.envelope.shgc = require_number(*it, "shgc", "envelope");
    plan.envelope.capacitance_multiplier =
        require_number(*it, "capacitance_multiplier", "envelope");
  }
  auto sit = j.find("spaces");
  if (sit == j.end() || !sit->is_array())
    throw std::runtime_error("plan json: missing \"spaces\" array");
  for (const auto& sj : *sit) plan.spaces.push_back(space_from_json(sj));
  return plan;
}

FloorPlan load_plan_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return plan_from_json_string(buf.str());
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& text) {
  namespace fs = std::filesystem;
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot rename into " + path.string());
  }
}

void save_plan_file(const FloorPlan& plan, const std::filesystem::path& path) {
  write_file_atomic(path, plan_to_json_string(plan));
}

}  // namespace planopt

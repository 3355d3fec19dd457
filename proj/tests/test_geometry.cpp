#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "planopt/geometry.hpp"
#include "test_support.hpp"

using namespace planopt;
using planopt::test::make_box_plan;
using planopt::test::make_duplex_plan;

TEST_CASE("wall sides round-trip through their names") {
  for (WallSide side : {WallSide::PlanNorth, WallSide::PlanEast,
                        WallSide::PlanSouth, WallSide::PlanWest}) {
    auto back = wall_side_from_string(to_string(side));
    REQUIRE(back.has_value());
    CHECK(*back == side);
  }
  CHECK(to_string(WallSide::PlanSouth) == std::string("plan-south"));
  CHECK_FALSE(wall_side_from_string("south").has_value());
  CHECK_FALSE(wall_side_from_string("").has_value());
}

TEST_CASE("base azimuths follow the compass") {
  CHECK(base_azimuth(WallSide::PlanNorth) == 0.0);
  CHECK(base_azimuth(WallSide::PlanEast) == 90.0);
  CHECK(base_azimuth(WallSide::PlanSouth) == 180.0);
  CHECK(base_azimuth(WallSide::PlanWest) == 270.0);
}

TEST_CASE("facade azimuth rotates rigidly with the plan") {
  CHECK(facade_azimuth(WallSide::PlanSouth, 0.0) == doctest::Approx(180.0));
  CHECK(facade_azimuth(WallSide::PlanSouth, 90.0) == doctest::Approx(270.0));
  CHECK(facade_azimuth(WallSide::PlanWest, 270.0) == doctest::Approx(180.0));
  CHECK(facade_azimuth(WallSide::PlanNorth, 180.0) == doctest::Approx(180.0));

  // Rotating the plan shifts every facade by the same amount (mod 360).
  for (WallSide side : {WallSide::PlanNorth, WallSide::PlanEast,
                        WallSide::PlanSouth, WallSide::PlanWest}) {
    const double at_zero = facade_azimuth(side, 0.0);
    for (double theta : {13.0, 90.0, 181.5, 270.0, 359.0}) {
      CHECK(facade_azimuth(side, theta) ==
            doctest::Approx(normalize_angle_deg(at_zero + theta)));
    }
  }
}

TEST_CASE("normalize_angle_deg wraps into [0, 360)") {
  CHECK(normalize_angle_deg(0.0) == doctest::Approx(0.0));
  CHECK(normalize_angle_deg(-90.0) == doctest::Approx(270.0));
  CHECK(normalize_angle_deg(360.0) == doctest::Approx(0.0));
  CHECK(normalize_angle_deg(725.0) == doctest::Approx(5.0));
  CHECK(normalize_angle_deg(-725.0) == doctest::Approx(355.0));
}

TEST_CASE("rect helpers and wall lengths") {
  Rect r{1.0, 2.0, 5.0, 4.0};
  CHECK(r.min_x() == 1.0);
  CHECK(r.max_x() == 6.0);
  CHECK(r.min_y() == 2.0);
  CHECK(r.max_y() == 6.0);
  CHECK(r.area() == doctest::Approx(20.0));

  Space s;
  s.rect = r;
  CHECK(s.wall_length(WallSide::PlanNorth) == doctest::Approx(5.0));
  CHECK(s.wall_length(WallSide::PlanSouth) == doctest::Approx(5.0));
  CHECK(s.wall_length(WallSide::PlanEast) == doctest::Approx(4.0));
  CHECK(s.wall_length(WallSide::PlanWest) == doctest::Approx(4.0));
  CHECK(s.floor_area() == doctest::Approx(20.0));
  CHECK(s.volume() == doctest::Approx(20.0 * 2.7));
}

TEST_CASE("a well-formed plan validates cleanly") {
  CHECK(validate_plan(make_box_plan()).empty());
  CHECK(validate_plan(make_duplex_plan()).empty());
}

TEST_CASE("validate_plan reports each violation with its exact message") {
  SUBCASE("orientation out of range") {
    FloorPlan plan = make_box_plan();
    plan.orientation_deg = 360.0;
    auto errors = validate_plan(plan);
    REQUIRE(errors.size() == 1);
    CHECK(errors[0] == "orientation out of range (360 not in [0, 360))");
    plan.orientation_deg = -1.0;
    CHECK(validate_plan(plan)[0] ==
          "orientation out of range (-1 not in [0, 360))");
  }
  SUBCASE("empty plan") {
    FloorPlan plan;
    auto errors = validate_plan(plan);
    REQUIRE(errors.size() == 1);
    CHECK(errors[0] == "plan has no spaces");
  }
  SUBCASE("envelope bounds") {
    FloorPlan plan = make_box_plan();
    plan.envelope.shgc = 0.0;
    CHECK(validate_plan(plan) ==
          std::vector<std::string>{"envelope shgc out of range (0, 1]"});
    plan.envelope.shgc = 1.5;
    CHECK(validate_plan(plan) ==
          std::vector<std::string>{"envelope shgc out of range (0, 1]"});
    plan = make_box_plan();
    plan.envelope.capacitance_multiplier = 0.5;
    CHECK(validate_plan(plan) ==
          std::vector<std::string>{"envelope capacitance multiplier below 1"});
    plan = make_box_plan();
    plan.envelope.wall_u = 0.0;
    CHECK(validate_plan(plan) ==
          std::vector<std::string>{"envelope has nonpositive U-value"});
    plan = make_box_plan();
    plan.envelope.window_u = -1.0;
    CHECK(validate_plan(plan) ==
          std::vector<std::string>{"envelope has nonpositive U-value"});
  }
  SUBCASE("overlapping spaces, names sorted in the message") {
    FloorPlan plan = make_duplex_plan();
    plan.spaces[1].rect.x = 3.0;  // slides "east" one meter into "west"
    auto errors = validate_plan(plan);
    REQUIRE(errors.size() == 1);
    CHECK(errors[0] == "spaces east and west overlap");
  }
  SUBCASE("space-level checks") {
    FloorPlan plan = make_box_plan();
    plan.spaces[0].rect.w = 0.0;
    plan.spaces[0].windows.clear();
    auto errors = validate_plan(plan);
    REQUIRE(!errors.empty());
    CHECK(errors[0] == "space room: nonpositive footprint dimension");

    plan = make_box_plan();
    plan.spaces[0].ceiling_height = 0.0;
    errors = validate_plan(plan);
    // The window now pokes through the zero-height ceiling as well.
    CHECK(std::count(errors.begin(), errors.end(),
                     "space room: nonpositive ceiling height") == 1);

    plan = make_box_plan();
    plan.spaces[0].internal_gain = -1.0;
    CHECK(validate_plan(plan) ==
          std::vector<std::string>{"space room: negative internal gain"});
  }
  SUBCASE("window-level checks carry the window index") {
    FloorPlan plan = make_box_plan();
    plan.spaces[0].windows[0].width = 0.0;
    CHECK(validate_plan(plan) ==
          std::vector<std::string>{"space room window 0: nonpositive window size"});

    plan = make_box_plan();
    plan.spaces[0].windows[0].offset = 4.5;  // 2 m window on a 5 m wall
    CHECK(validate_plan(plan) ==
          std::vector<std::string>{"space room window 0: window exceeds wall"});

    plan = make_box_plan();
    plan.spaces[0].windows[0].sill = 2.0;  // head at 3.2 m under a 2.7 m ceiling
    CHECK(validate_plan(plan) ==
          std::vector<std::string>{"space room window 0: window exceeds ceiling"});

    plan = make_box_plan();
    plan.spaces[0].windows[0].overhang = Overhang{-0.1};
    CHECK(validate_plan(plan) ==
          std::vector<std::string>{"space room window 0: negative overhang depth"});

    plan = make_box_plan();
    plan.spaces[0].windows[0].fins = FinPair{0.2, -0.2};
    CHECK(validate_plan(plan) ==
          std::vector<std::string>{"space room window 0: negative fin depth"});
  }
  SUBCASE("window on a shared wall is rejected") {
    FloorPlan plan = make_duplex_plan();
    // Move the west space's window onto the party wall at x = 4.
    plan.spaces[0].windows[0].wall_side = WallSide::PlanEast;
    CHECK(validate_plan(plan) ==
          std::vector<std::string>{
              "space west window 0: window not on exterior wall"});
  }
  SUBCASE("combined window widths cannot exceed the wall") {
    FloorPlan plan = make_box_plan();
    Window extra = plan.spaces[0].windows[0];
    extra.offset = 0.0;
    extra.width = 1.4;
    plan.spaces[0].windows.insert(plan.spaces[0].windows.begin(), extra);
    plan.spaces[0].windows[1].offset = 1.6;
    plan.spaces[0].windows[1].width = 3.8;  // 1.4 + 3.8 > 5
    auto errors = validate_plan(plan);
    REQUIRE(errors.size() == 2);
    CHECK(errors[0] == "space room window 1: window exceeds wall");
    CHECK(errors[1] == "space room: windows exceed wall plan-south");
  }
}

TEST_CASE("violations come out plan-level first, then by space name") {
  FloorPlan plan = make_duplex_plan();
  plan.orientation_deg = 400.0;
  plan.spaces[0].internal_gain = -2.0;  // space "west"
  plan.spaces[1].ceiling_height = 0.0;  // space "east", listed first by name
  plan.spaces[1].windows.clear();
  auto errors = validate_plan(plan);
  REQUIRE(errors.size() == 3);
  CHECK(errors[0] == "orientation out of range (400 not in [0, 360))");
  CHECK(errors[1] == "space east: nonpositive ceiling height");
  CHECK(errors[2] == "space west: negative internal gain");
}

TEST_CASE("exterior intervals exclude shared stretches") {
  const FloorPlan plan = make_duplex_plan();

  SUBCASE("an unshared wall is exterior end to end") {
    auto intervals = exterior_intervals(plan, 0, WallSide::PlanWest);
    REQUIRE(intervals.size() == 1);
    CHECK(intervals[0].lo == doctest::Approx(0.0));
    CHECK(intervals[0].hi == doctest::Approx(4.0));
    CHECK(exterior_length(plan, 0, WallSide::PlanWest) == doctest::Approx(4.0));
  }
  SUBCASE("the party wall is fully interior on both sides") {
    CHECK(exterior_intervals(plan, 0, WallSide::PlanEast).empty());
    CHECK(exterior_intervals(plan, 1, WallSide::PlanWest).empty());
    CHECK(exterior_length(plan, 0, WallSide::PlanEast) == doctest::Approx(0.0));
  }
  SUBCASE("partial cover leaves the uncovered stretch") {
    FloorPlan partial = make_duplex_plan();
    partial.spaces[1].rect = {4.0, 0.0, 4.0, 2.5};  // covers y in [0, 2.5]
    auto intervals = exterior_intervals(partial, 0, WallSide::PlanEast);
    REQUIRE(intervals.size() == 1);
    CHECK(intervals[0].lo == doctest::Approx(2.5));
    CHECK(intervals[0].hi == doctest::Approx(4.0));
  }
  SUBCASE("two neighbors merge their cover") {
    FloorPlan three = make_duplex_plan();
    three.spaces[1].rect = {4.0, 0.0, 4.0, 2.0};
    Space upper;
    upper.name = "upper";
    upper.rect = {4.0, 2.0, 4.0, 2.0};
    three.spaces.push_back(std::move(upper));
    CHECK(exterior_intervals(three, 0, WallSide::PlanEast).empty());
  }
}

TEST_CASE("window_on_exterior tracks its wall's exposure") {
  FloorPlan plan = make_duplex_plan();
  const Window& w = plan.spaces[0].windows[0];
  CHECK(window_on_exterior(plan, 0, w));

  Window on_party = w;
  on_party.wall_side = WallSide::PlanEast;
  CHECK_FALSE(window_on_exterior(plan, 0, on_party));

  // Straddling the edge of the covered stretch is rejected too.
  FloorPlan partial = make_duplex_plan();
  partial.spaces[1].rect = {4.0, 0.0, 4.0, 2.5};
  Window straddle{WallSide::PlanEast, 2.0, 1.0, 1.0, 0.9, {}, {}};
  CHECK_FALSE(window_on_exterior(partial, 0, straddle));
  Window clear{WallSide::PlanEast, 2.6, 1.0, 1.0, 0.9, {}, {}};
  CHECK(window_on_exterior(partial, 0, clear));
}

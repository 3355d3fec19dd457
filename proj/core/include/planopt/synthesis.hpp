#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "planopt/geometry.hpp"

namespace planopt {

struct ProgramEntry {
  std::string name;
  double target_area = 0.0;    // m2
  double internal_gain = 4.0;  // W/m2
};

/// A design program is just the room schedule: what spaces to make and how
/// big.  Layout, adjacency and glazing all come out of the generator.
struct DesignProgram {
  std::vector<ProgramEntry> entries;
  double total_area() const;
};

/// Ten-space dwelling program (100.5 m2: hall, corridor, kitchen, living,
/// dining, two baths, three bedrooms) used as the default corpus.
DesignProgram default_dwelling_program();

/// Deterministic synthetic plan generator.
///
/// Draws a footprint aspect ratio, shuffles the program, and strip-packs the
/// spaces so they tile the footprint exactly: the shuffled list is split into
/// contiguous strips of near-equal area, each strip spans the full footprint
/// width with height strip_area/W, and each space in a strip gets width
/// area/strip_height.  Every space touching the boundary receives one window
/// sized to exactly 10% of its floor area, centered on its longest exterior
/// wall segment.  The initial orientation is drawn uniformly from [0, 360).
///
/// A layout attempt fails when a space comes out thinner than 1.5 m or a
/// required window cannot fit on any exterior segment; the generator then
/// retries with a remixed sub-seed.  After 32 failed attempts it throws
/// std::runtime_error("infeasible program").  Identical (program, seed) pairs
/// always produce byte-identical plans, independent of platform.
FloorPlan generate_synthetic_plan(const DesignProgram& program,
                                  std::uint64_t seed, std::string id);

/// Convenience batch wrapper: plan k uses seed base_seed + k and id
/// "<id_prefix>-<k>" (zero-padded to 4 digits).
std::vector<FloorPlan> generate_plan_set(const DesignProgram& program,
                                         std::uint64_t base_seed, int count,
                                         const std::string& id_prefix);

}  // namespace planopt

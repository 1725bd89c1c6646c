#pragma once

// Scene files: UTF-8 JSON with a space tag, a seed, and a list of bodies,
// each a set of cycle half-domains plus a placement isometry. See README for
// the schema; parse errors carry line/column.

#include <string>
#include <vector>

#include "ccg/regions.hpp"
#include "ccg/symmetry.hpp"

namespace ccg {

struct Scene {
    Space space = Space::Euclidean;
    std::uint64_t seed = 0;
    std::string name;
    std::vector<ConvexRegion> bodies;
};

Scene parse_scene(const std::string& json_text);
Scene load_scene(const std::string& path);
std::string serialize_scene(const Scene& scene);
void save_scene(const Scene& scene, const std::string& path);

std::string serialize_report(const SymmetryReport& report);

// placement parsing is shared with experiment configs
Isometry parse_placement_json(Space space, const std::string& json_text);

}  // namespace ccg

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccg/scene.hpp"

namespace ccg {

// Draws the scene in the chosen model: the model disk (S2/H2), the bodies'
// boundary chains, their non-smooth vertices, and any detected symmetry
// elements. Writes a standalone SVG file.
void render_scene(const Scene& scene, Model model, const std::string& path,
                  const std::vector<SymmetryReport>& reports = {});

}  // namespace ccg

#pragma once

#include <string>

#include "tess/faces.hpp"
#include "tess/graph.hpp"

namespace tess {

struct SvgOptions {
  double scale = 100.0;     // svg units per length unit
  bool fill_faces = true;   // tint bounded faces by Euler number
  double margin = 0.25;     // length units around the bounding box
};

// Renders the graph, and when a face set is given tints each bounded face by
// its Euler number (dark red <= -2, orange -1, grey 0, blue 1, purple >= 2).
// Holes are punched via the even-odd fill rule.  Isolated nodes draw as dots
// and 2-valent straight-gap vertices get a concentric-ring marker.
void write_svg(const std::string& path, const GeometricGraph& g,
               const FaceSet* faces = nullptr, const SvgOptions& opt = {});

}  // namespace tess

#pragma once

#include <vector>

#include "tess/graph.hpp"

namespace tess {

struct Segment {
  Point2 a;
  Point2 b;
};

// Turns a soup of segments (plus optional lone points) into a valid graph:
// crossings, junctions, and collinear overlaps become shared nodes, segments
// are split at them, coincident pieces are merged, and endpoints closer than
// kSnapTol are fused.  Separations inside [kSnapTol, kGuardTol) and segments
// shorter than kGuardTol are rejected as ToleranceFailure.  Lone points
// become isolated nodes, or split a segment they happen to lie on.
GeometricGraph planarize(const std::vector<Segment>& segments,
                         const std::vector<Point2>& lone_points = {});

}  // namespace tess

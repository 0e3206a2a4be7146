#pragma once

#include <vector>

#include "tess/faces.hpp"
#include "tess/graph.hpp"

namespace tess {

struct Window {
  Point2 center{0.0, 0.0};
  double radius = 1.0;
};

// Graph restricted to a closed disc: interior content, boundary nodes where
// edges meet the circle (crossings and on-circle vertices alike), and the
// circular arcs between them.  With no boundary node the circle survives as
// a node-free full circle.
struct ClipResult {
  EmbeddedGraph eg;

  double ell = 0.0;       // total edge length inside the closed disc
  long long m_parts = 0;  // M: edge-parts (entire edges plus crossing pieces)
  long long m_entire = 0; // M': edges wholly inside the closed disc
  long long m_cut1 = 0;   // edges crossing the circle once
  long long m_cut2 = 0;   // edges crossing twice (chord with both ends outside)
  long long boundary_hits = 0;       // crossing events; touches not counted
  long long boundary_node_count = 0; // distinct nodes on the circle

  std::vector<int> interior_nodes;   // original node ids strictly inside
  std::vector<int> on_circle_nodes;  // original node ids sitting on the circle
};

// Splits edges at circle crossings and assembles the windowed graph.  Edges
// tangent to the circle, grazing it within tolerance, or leaving an
// on-circle vertex outward raise DegenerateTangency; shift the window and
// rerun instead.
ClipResult clip_to_window(const GeometricGraph& g, const Window& w);

}  // namespace tess

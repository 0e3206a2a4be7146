#pragma once

#include <utility>
#include <vector>

#include "tess/error.hpp"
#include "tess/geometry.hpp"

namespace tess {

struct IncidentLink {
  int link = -1;      // index into GeometricGraph::links
  int to = -1;        // neighbor node
  double angle = 0.0; // departure direction, atan2 in [-pi, pi]
};

// Finite planar geometric graph: nodes at distinct positions, straight links
// whose interiors are pairwise disjoint and avoid all nodes.  Valencies 0 and
// 1 are allowed.  Incidence lists are sorted anticlockwise by departure angle.
struct GeometricGraph {
  std::vector<Point2> nodes;
  std::vector<std::pair<int, int>> links;  // each stored with first < second
  std::vector<std::vector<IncidentLink>> incidence;
  std::vector<int> isolated_nodes;  // valency-0 node ids, ascending

  int valency(int node) const { return static_cast<int>(incidence[node].size()); }
  double link_length(int l) const {
    return dist(nodes[links[l].first], nodes[links[l].second]);
  }
  Point2 link_midpoint(int l) const {
    return 0.5 * (nodes[links[l].first] + nodes[links[l].second]);
  }
  double total_link_length() const;
};

// Valency plus the count of straight angles among the cyclic gaps between
// consecutive emanating links.  A 2-valent node with two straight gaps is a
// double-straight vertex; its two sides see one flat angle each.
struct VertexClass {
  int valency = 0;
  int pi_angle_count = 0;
  bool is_pi = false;
  bool is_double_pi = false;
};

VertexClass classify_vertex(const GeometricGraph& g, int node);

// Validates and assembles a graph.  Throws Error with code DuplicateNode,
// LoopLink, DuplicateLink, NodeOnLinkInterior, or CrossingLinkInteriors,
// naming the first offending element found.
GeometricGraph build_graph(std::vector<Point2> nodes,
                           std::vector<std::pair<int, int>> links);

}  // namespace tess

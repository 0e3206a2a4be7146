#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tess/graph.hpp"
#include "tess/window.hpp"

namespace tess {

// Stationary isotropic random lines with length intensity `intensity`,
// materialized as chords of the disc of radius w.radius + margin and
// planarized.  The margin keeps boundary artifacts away from the window.
GeometricGraph poisson_lines(double intensity, const Window& w, double margin,
                             std::uint64_t seed);

// Keeps each link independently with probability 1 - q; every node stays,
// so thinning manufactures all valencies from 0 to 4 plus straight-gap
// 2-valent vertices out of a crossing pattern.
GeometricGraph delete_edge_interiors(const GeometricGraph& g, double q,
                                     std::uint64_t seed);

struct LeafConfig {
  double w_min = 0.8;
  double w_max = 1.2;
  double h_min = 0.5;
  double h_max = 0.8;
  bool isotropic = true;      // orientation uniform on [0, pi)
  double fixed_angle = 0.0;   // used when isotropic is false
  long long budget = 200000;  // leaves to try before giving up on coverage
};

// Visible boundaries of sequentially stacked closed rectangles, earliest on
// top; leaves fall until they cover the window plus one leaf diagonal of
// margin.  Throws CoverageTimeout when the budget runs out first.
GeometricGraph falling_leaves(const LeafConfig& cfg, const Window& w,
                              std::uint64_t seed);

enum class HexVariant { PointHole, SegmentHole };

struct BlockFixture {
  GeometricGraph graph;
  Point2 block_origin{};
  double block_w = 0.0;
  double block_h = 0.0;
};

// Honeycomb patch with one decoration per cell: an isolated node at the
// centre, or a short free-floating segment.  Coordinates are exact binary
// fractions so congruent copies are bitwise identical and the longest-side
// tie-breaks come out the same in every cell.  The patch spans
// [-copies, copies] in both lattice directions; the block frames one period
// (two cells) away from any cell boundary feature.
BlockFixture hexagon_fixture(HexVariant variant, int copies, Point2 origin_offset);

struct Fig4aFixture {
  GeometricGraph graph;
  Point2 block_origin{};
  double block_w = 0.0;
  double block_h = 0.0;
  std::vector<Point2> anchors;            // one interior point per cell orbit
  std::vector<std::string> anchor_names;
  std::vector<int> grouping_a;            // anchor index -> union id
};

// Hand-built periodic pattern with six cell orbits per 2 x 1 block: two
// triangular wedges, a rectangular island, a room holding both wedges as
// holes, a corridor holding the island, and a pocket with a slit wall.
// Euler numbers span -1, 0, and 1.  Coordinates are exact binary fractions.
Fig4aFixture fig4a_fixture(int copies, Point2 origin_offset);

}  // namespace tess

#pragma once

// Seeded generator of small well-separated graphs for oracle comparisons.
// Rejection keeps every pair of features several raster pixels apart, so
// the pixel census in raster_oracle.hpp cannot smear two features together
// or lose a sliver face.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tess/error.hpp"
#include "tess/graph.hpp"
#include "tess/planarize.hpp"
#include "tess/rng.hpp"

namespace tess::testing {

inline bool well_separated(const GeometricGraph& g) {
  const int n = static_cast<int>(g.nodes.size());
  if (static_cast<int>(g.links.size()) > 12) return false;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (dist(g.nodes[i], g.nodes[j]) < 0.08) return false;
    }
  }
  for (int l = 0; l < static_cast<int>(g.links.size()); ++l) {
    const auto [a, b] = g.links[l];
    if (dist(g.nodes[a], g.nodes[b]) < 0.05) return false;
    for (int i = 0; i < n; ++i) {
      if (i == a || i == b) continue;
      if (point_segment_dist(g.nodes[i], g.nodes[a], g.nodes[b]) < 0.02) return false;
    }
    // Links that do not share a node must keep a raster-visible gap; after
    // planarization disjoint links cannot cross, so endpoint distances give
    // their true separation.
    for (int m = l + 1; m < static_cast<int>(g.links.size()); ++m) {
      const auto [c, d] = g.links[m];
      if (c == a || c == b || d == a || d == b) continue;
      const double gap = std::min(
          std::min(point_segment_dist(g.nodes[a], g.nodes[c], g.nodes[d]),
                   point_segment_dist(g.nodes[b], g.nodes[c], g.nodes[d])),
          std::min(point_segment_dist(g.nodes[c], g.nodes[a], g.nodes[b]),
                   point_segment_dist(g.nodes[d], g.nodes[a], g.nodes[b])));
      if (gap < 0.02) return false;
    }
  }
  // No sliver wedges: consecutive departures at a node stay 0.3 rad apart.
  for (int i = 0; i < n; ++i) {
    const auto& inc = g.incidence[i];
    const int k = static_cast<int>(inc.size());
    if (k < 2) continue;
    for (int t = 0; t < k; ++t) {
      const double a0 = inc[t].angle;
      const double a1 = inc[(t + 1) % k].angle + (t + 1 == k ? 2.0 * kPi : 0.0);
      if (a1 - a0 < 0.3) return false;
    }
  }
  return true;
}

// Up to five segments and two lone points in the unit square, planarized,
// rejection-sampled until the separation rules hold.  Deterministic per
// seed; distinct seeds give independent draws.
inline GeometricGraph random_small_graph(std::uint64_t seed) {
  Rng rng(seed ^ 0x9E3779B97F4A7C15ull);
  for (int attempt = 0; attempt < 4000; ++attempt) {
    const int nseg = 1 + static_cast<int>(rng.next_u64() % 5);
    const int npts = static_cast<int>(rng.next_u64() % 3);
    std::vector<Segment> segs;
    for (int s = 0; s < nseg; ++s) {
      const Point2 a{rng.uniform(), rng.uniform()};
      const Point2 b{rng.uniform(), rng.uniform()};
      if (dist(a, b) < 0.2) continue;
      segs.push_back({a, b});
    }
    std::vector<Point2> pts;
    for (int p = 0; p < npts; ++p) pts.push_back({rng.uniform(), rng.uniform()});
    if (segs.empty()) continue;
    GeometricGraph g;
    try {
      g = planarize(segs, pts);
    } catch (const Error&) {
      continue;
    }
    if (well_separated(g)) return g;
  }
  throw std::runtime_error("corpus sampler exhausted its attempts");
}

}  // namespace tess::testing

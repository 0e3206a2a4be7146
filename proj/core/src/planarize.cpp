#include "tess/planarize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "tess/detail/grid.hpp"

namespace tess {
namespace {

struct Candidate {
  Point2 pos;
  int cluster = -1;
};

struct SplitRef {
  double t;     // parameter along the owning segment
  int cand;     // index into the candidate point pool
};

int find_root(std::vector<int>& parent, int i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

void unite(std::vector<int>& parent, int a, int b) {
  a = find_root(parent, a);
  b = find_root(parent, b);
  if (a != b) parent[std::max(a, b)] = std::min(a, b);
}

}  // namespace

GeometricGraph planarize(const std::vector<Segment>& segments,
                         const std::vector<Point2>& lone_points) {
  const int ns = static_cast<int>(segments.size());
  for (int i = 0; i < ns; ++i) {
    if (dist(segments[i].a, segments[i].b) < kGuardTol) {
      throw Error(ErrorCode::ToleranceFailure,
                  "input segment " + std::to_string(i) + " is degenerate");
    }
  }

  std::vector<Candidate> pool;
  std::vector<std::vector<SplitRef>> splits(ns);
  auto add_point = [&](Point2 p) {
    pool.push_back({p, -1});
    return static_cast<int>(pool.size()) - 1;
  };
  auto add_split = [&](int seg, Point2 p, int cand) {
    const Point2 d = segments[seg].b - segments[seg].a;
    const double t = dot(p - segments[seg].a, d) / norm2(d);
    splits[seg].push_back({t, cand});
  };

  std::vector<std::pair<int, int>> seg_ends(ns);
  for (int i = 0; i < ns; ++i) {
    seg_ends[i] = {add_point(segments[i].a), add_point(segments[i].b)};
    splits[i].push_back({0.0, seg_ends[i].first});
    splits[i].push_back({1.0, seg_ends[i].second});
  }
  std::vector<int> lone_cands;
  for (Point2 p : lone_points) lone_cands.push_back(add_point(p));

  // Candidate pairs by x-interval sweep over bounding boxes.
  std::vector<int> order(ns);
  std::iota(order.begin(), order.end(), 0);
  auto xmin = [&](int i) { return std::min(segments[i].a.x, segments[i].b.x); };
  auto xmax = [&](int i) { return std::max(segments[i].a.x, segments[i].b.x); };
  auto ymin = [&](int i) { return std::min(segments[i].a.y, segments[i].b.y); };
  auto ymax = [&](int i) { return std::max(segments[i].a.y, segments[i].b.y); };
  std::sort(order.begin(), order.end(), [&](int i, int j) { return xmin(i) < xmin(j); });

  auto endpoint_on = [&](int seg_owner, int cand, Point2 p) {
    // A candidate point within snapping range of a segment splits it there.
    if (point_segment_dist(p, segments[seg_owner].a, segments[seg_owner].b) < kSnapTol)
      add_split(seg_owner, p, cand);
  };

  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const int i = order[oi];
    for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
      const int j = order[oj];
      if (xmin(j) > xmax(i) + kSnapTol) break;
      if (ymin(j) > ymax(i) + kSnapTol || ymin(i) > ymax(j) + kSnapTol) continue;

      const Point2 a = segments[i].a, b = segments[i].b;
      const Point2 c = segments[j].a, d = segments[j].b;

      endpoint_on(j, seg_ends[i].first, a);
      endpoint_on(j, seg_ends[i].second, b);
      endpoint_on(i, seg_ends[j].first, c);
      endpoint_on(i, seg_ends[j].second, d);

      const double d1 = cross(b - a, c - a);
      const double d2 = cross(b - a, d - a);
      const double d3 = cross(d - c, a - c);
      const double d4 = cross(d - c, b - c);
      // Strict straddling only: an exact zero means an endpoint touch, which
      // the endpoint_on splits above already cover, and recomputing that
      // point here would land an ulp off the stored endpoint.
      const bool straddle_ij = (d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0);
      const bool straddle_ji = (d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0);
      if (straddle_ij && straddle_ji) {
        const double denom = d3 - d4;
        if (std::abs(denom) > 1e-14 * norm(b - a) * norm(d - c)) {
          const Point2 p = a + (d3 / denom) * (b - a);
          const int cand = add_point(p);
          add_split(i, p, cand);
          add_split(j, p, cand);
        }
      }
    }
  }

  // Lone points may rest on a segment; they then become split nodes.
  for (std::size_t k = 0; k < lone_points.size(); ++k) {
    for (int i = 0; i < ns; ++i) endpoint_on(i, lone_cands[k], lone_points[k]);
  }

  // Cluster candidate points: pairs under kSnapTol merge, pairs landing in
  // the guard band are ambiguous and rejected.
  const int np = static_cast<int>(pool.size());
  std::vector<int> parent(np);
  std::iota(parent.begin(), parent.end(), 0);
  detail::PointGrid grid(kGuardTol);
  for (int i = 0; i < np; ++i) {
    grid.for_neighbors(pool[i].pos, [&](int j) {
      if (dist(pool[i].pos, pool[j].pos) < kSnapTol) unite(parent, i, j);
    });
    grid.insert(pool[i].pos, i);
  }

  std::vector<int> root_to_node(np, -1);
  std::vector<Point2> sums;
  std::vector<int> sizes;
  for (int i = 0; i < np; ++i) {
    const int r = find_root(parent, i);
    if (root_to_node[r] < 0) {
      root_to_node[r] = static_cast<int>(sums.size());
      sums.push_back({0, 0});
      sizes.push_back(0);
    }
    const int nid = root_to_node[r];
    sums[nid] = sums[nid] + pool[i].pos;
    ++sizes[nid];
    pool[i].cluster = nid;
  }
  std::vector<Point2> nodes(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i)
    nodes[i] = (1.0 / sizes[i]) * sums[i];

  detail::PointGrid node_grid(kGuardTol);
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
    bool band = false;
    node_grid.for_neighbors(nodes[i], [&](int j) {
      if (dist(nodes[i], nodes[j]) < kGuardTol) band = true;
    });
    if (band) {
      throw Error(ErrorCode::ToleranceFailure,
                  "distinct points separated by less than the guard tolerance");
    }
    node_grid.insert(nodes[i], i);
  }

  std::vector<std::pair<int, int>> links;
  for (int i = 0; i < ns; ++i) {
    auto& sp = splits[i];
    std::sort(sp.begin(), sp.end(), [](const SplitRef& x, const SplitRef& y) {
      return x.t < y.t;
    });
    int prev = -1;
    for (const SplitRef& ref : sp) {
      const int node = pool[ref.cand].cluster;
      if (node == prev) continue;
      if (prev >= 0) links.push_back({std::min(prev, node), std::max(prev, node)});
      prev = node;
    }
  }
  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());

  return build_graph(std::move(nodes), std::move(links));
}

}  // namespace tess

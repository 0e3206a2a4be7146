#include "tess/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "tess/detail/grid.hpp"

namespace tess {
namespace {

// Grid over segment bounding boxes; cells list the segments whose padded bbox
// overlaps them.
class SegGrid {
 public:
  SegGrid(const std::vector<Point2>& nodes,
          const std::vector<std::pair<int, int>>& links, double pad)
      : pad_(pad) {
    double total = 0.0;
    for (const auto& [a, b] : links) total += dist(nodes[a], nodes[b]);
    cell_ = links.empty() ? 1.0 : total / static_cast<double>(links.size());
    if (cell_ < 1e-6) cell_ = 1e-6;
    for (int l = 0; l < static_cast<int>(links.size()); ++l) {
      visit_cells(nodes[links[l].first], nodes[links[l].second],
                  [&](std::uint64_t k) { cells_[k].push_back(l); });
    }
  }

  template <typename Fn>
  void for_candidates(Point2 a, Point2 b, Fn&& fn) const {
    visit_cells(a, b, [&](std::uint64_t k) {
      auto it = cells_.find(k);
      if (it == cells_.end()) return;
      for (int l : it->second) fn(l);
    });
  }

  template <typename Fn>
  void for_candidates(Point2 p, Fn&& fn) const {
    for_candidates(p, p, fn);
  }

 private:
  template <typename Fn>
  void visit_cells(Point2 a, Point2 b, Fn&& fn) const {
    const auto lo_x = idx(std::min(a.x, b.x) - pad_);
    const auto hi_x = idx(std::max(a.x, b.x) + pad_);
    const auto lo_y = idx(std::min(a.y, b.y) - pad_);
    const auto hi_y = idx(std::max(a.y, b.y) + pad_);
    for (std::int64_t cx = lo_x; cx <= hi_x; ++cx)
      for (std::int64_t cy = lo_y; cy <= hi_y; ++cy)
        fn(static_cast<std::uint64_t>(cx) * 0x9E3779B97F4A7C15ull ^
           static_cast<std::uint64_t>(cy));
  }
  std::int64_t idx(double v) const {
    return static_cast<std::int64_t>(std::floor(v / cell_));
  }

  double pad_;
  double cell_ = 1.0;
  std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

// Closest pair of points between closed segments [a,b] and [c,d]; returns
// squared distance and the pair's location as parameters (s, t).
double seg_seg_dist(Point2 a, Point2 b, Point2 c, Point2 d, double& s, double& t) {
  const Point2 u = b - a, v = d - c, w = a - c;
  const double uu = dot(u, u), vv = dot(v, v), uv = dot(u, v);
  const double uw = dot(u, w), vw = dot(v, w);
  const double denom = uu * vv - uv * uv;
  if (denom > 1e-14 * uu * vv) {
    s = (uv * vw - vv * uw) / denom;
    t = (uu * vw - uv * uw) / denom;
    s = std::clamp(s, 0.0, 1.0);
    t = std::clamp(t, 0.0, 1.0);
  } else {
    s = 0.0;
    t = vv > 0 ? std::clamp(vw / vv, 0.0, 1.0) : 0.0;
  }
  // One clamped coordinate pass is not optimal for all configurations; refine
  // by projecting each clamped point back on the other segment.
  for (int it = 0; it < 2; ++it) {
    const Point2 ps = a + s * u;
    t = vv > 0 ? std::clamp(dot(ps - c, v) / vv, 0.0, 1.0) : 0.0;
    const Point2 pt = c + t * v;
    s = uu > 0 ? std::clamp(dot(pt - a, u) / uu, 0.0, 1.0) : 0.0;
  }
  return dist(a + s * u, c + t * v);
}

}  // namespace

double GeometricGraph::total_link_length() const {
  double total = 0.0;
  for (int l = 0; l < static_cast<int>(links.size()); ++l) total += link_length(l);
  return total;
}

VertexClass classify_vertex(const GeometricGraph& g, int node) {
  VertexClass c;
  const auto& inc = g.incidence[node];
  c.valency = static_cast<int>(inc.size());
  if (c.valency >= 2) {
    for (int i = 0; i < c.valency; ++i) {
      const double next = inc[(i + 1) % c.valency].angle;
      const double gap = wrap_2pi(next - inc[i].angle);
      if (std::abs(gap - kPi) < kAngleTol) ++c.pi_angle_count;
    }
  }
  c.is_pi = c.pi_angle_count >= 1;
  c.is_double_pi = (c.valency == 2 && c.pi_angle_count == 2);
  return c;
}

GeometricGraph build_graph(std::vector<Point2> nodes,
                           std::vector<std::pair<int, int>> links) {
  const int n = static_cast<int>(nodes.size());

  detail::PointGrid node_grid(std::max(kSnapTol, 1e-9));
  for (int i = 0; i < n; ++i) {
    int clash = -1;
    node_grid.for_neighbors(nodes[i], [&](int j) {
      if (clash < 0 && dist(nodes[i], nodes[j]) < kSnapTol) clash = j;
    });
    if (clash >= 0) {
      throw Error(ErrorCode::DuplicateNode,
                  "nodes " + std::to_string(clash) + " and " + std::to_string(i) +
                      " coincide");
    }
    node_grid.insert(nodes[i], i);
  }

  std::unordered_set<std::uint64_t> seen;
  for (int l = 0; l < static_cast<int>(links.size()); ++l) {
    auto& [a, b] = links[l];
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw Error(ErrorCode::ConfigError, "link " + std::to_string(l) +
                                              " references a missing node");
    }
    if (a == b) {
      throw Error(ErrorCode::LoopLink,
                  "link " + std::to_string(l) + " joins node " +
                      std::to_string(a) + " to itself");
    }
    if (a > b) std::swap(a, b);
    const std::uint64_t key =
        (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
    if (!seen.insert(key).second) {
      throw Error(ErrorCode::DuplicateLink,
                  "link " + std::to_string(l) + " repeats {" + std::to_string(a) +
                      "," + std::to_string(b) + "}");
    }
  }

  SegGrid seg_grid(nodes, links, kSnapTol);

  for (int i = 0; i < n; ++i) {
    seg_grid.for_candidates(nodes[i], [&](int l) {
      const auto [a, b] = links[l];
      if (a == i || b == i) return;
      if (point_segment_dist(nodes[i], nodes[a], nodes[b]) < kSnapTol) {
        throw Error(ErrorCode::NodeOnLinkInterior,
                    "node " + std::to_string(i) + " lies on link " +
                        std::to_string(l));
      }
    });
  }

  for (int l1 = 0; l1 < static_cast<int>(links.size()); ++l1) {
    const auto [a, b] = links[l1];
    std::unordered_set<int> tested;
    seg_grid.for_candidates(nodes[a], nodes[b], [&](int l2) {
      if (l2 <= l1 || !tested.insert(l2).second) return;
      const auto [c, d] = links[l2];
      double s = 0, t = 0;
      if (seg_seg_dist(nodes[a], nodes[b], nodes[c], nodes[d], s, t) >= kSnapTol)
        return;
      const Point2 p = nodes[a] + s * (nodes[b] - nodes[a]);
      const double e1 = std::min(dist(p, nodes[a]), dist(p, nodes[b]));
      const double e2 = std::min(dist(p, nodes[c]), dist(p, nodes[d]));
      // Contacts at shared endpoints are legal; an endpoint resting on the
      // other's interior was reported above as NodeOnLinkInterior.
      if (e1 >= kSnapTol && e2 >= kSnapTol) {
        throw Error(ErrorCode::CrossingLinkInteriors,
                    "links " + std::to_string(l1) + " and " + std::to_string(l2) +
                        " cross away from their endpoints");
      }
    });
  }

  GeometricGraph g;
  g.nodes = std::move(nodes);
  g.links = std::move(links);
  g.incidence.assign(n, {});
  for (int l = 0; l < static_cast<int>(g.links.size()); ++l) {
    const auto [a, b] = g.links[l];
    const Point2 dab = g.nodes[b] - g.nodes[a];
    g.incidence[a].push_back({l, b, std::atan2(dab.y, dab.x)});
    g.incidence[b].push_back({l, a, std::atan2(-dab.y, -dab.x)});
  }
  for (auto& inc : g.incidence) {
    std::sort(inc.begin(), inc.end(), [](const IncidentLink& x, const IncidentLink& y) {
      if (x.angle != y.angle) return x.angle < y.angle;
      return x.link < y.link;
    });
  }
  for (int i = 0; i < n; ++i)
    if (g.incidence[i].empty()) g.isolated_nodes.push_back(i);
  return g;
}

}  // namespace tess

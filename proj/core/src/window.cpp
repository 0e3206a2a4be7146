#include "tess/window.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tess/error.hpp"

namespace tess {
namespace {

enum class Side { In, On, Out };

Side classify_point(Point2 p, const Window& w) {
  const double d = dist(p, w.center);
  if (std::abs(d - w.radius) < kSnapTol) return Side::On;
  return d < w.radius ? Side::In : Side::Out;
}

// A crossing is usable only when the edge meets the circle at a real angle;
// |dot(dir, radial)| is the sine of the edge-to-tangent angle.
void require_transversal(Point2 at, Point2 dir, const Window& w, int link) {
  const Point2 u = (at - w.center) * (1.0 / dist(at, w.center));
  const Point2 d = dir * (1.0 / norm(dir));
  if (std::abs(dot(d, u)) < kAngleTol) {
    throw Error(ErrorCode::DegenerateTangency,
                "link " + std::to_string(link) + " meets the window circle tangentially");
  }
}

// Roots of |A + t d - c|^2 = r^2, ascending.  Caller guarantees a genuine
// crossing, so the discriminant is positive.
void circle_roots(Point2 A, Point2 d, const Window& w, double& t1, double& t2) {
  const Point2 f = A - w.center;
  const double a = dot(d, d);
  const double b = 2.0 * dot(f, d);
  const double cc = dot(f, f) - w.radius * w.radius;
  const double disc = b * b - 4.0 * a * cc;
  const double sq = std::sqrt(std::max(disc, 0.0));
  const double q = -0.5 * (b + (b >= 0 ? sq : -sq));
  t1 = q / a;
  t2 = cc / q;
  if (t1 > t2) std::swap(t1, t2);
}

}  // namespace

ClipResult clip_to_window(const GeometricGraph& g, const Window& w) {
  if (!(w.radius > 0.0)) {
    throw Error(ErrorCode::ConfigError, "window radius must be positive");
  }
  ClipResult res;
  const int n = static_cast<int>(g.nodes.size());
  std::vector<Side> side(n);
  for (int i = 0; i < n; ++i) side[i] = classify_point(g.nodes[i], w);

  for (int i = 0; i < n; ++i) {
    if (side[i] == Side::On) {
      res.on_circle_nodes.push_back(i);
      for (const IncidentLink& inc : g.incidence[i]) {
        if (side[inc.to] == Side::Out) {
          throw Error(ErrorCode::DegenerateTangency,
                      "node " + std::to_string(i) +
                          " sits on the window circle with link " +
                          std::to_string(inc.link) + " leaving outward");
        }
        require_transversal(g.nodes[i], g.nodes[inc.to] - g.nodes[i], w, inc.link);
      }
    } else if (side[i] == Side::In) {
      res.interior_nodes.push_back(i);
    }
  }

  EmbeddedGraph eg;
  std::vector<int> map(n, -1);
  for (int i = 0; i < n; ++i) {
    if (side[i] != Side::Out) {
      map[i] = static_cast<int>(eg.nodes.size());
      eg.nodes.push_back(g.nodes[i]);
    }
  }

  struct BoundaryNode {
    int id;
    double phi;
  };
  std::vector<BoundaryNode> bnodes;
  for (int i : res.on_circle_nodes) {
    const Point2 p = g.nodes[i];
    bnodes.push_back({map[i], std::atan2(p.y - w.center.y, p.x - w.center.x)});
  }

  auto add_segment = [&](int na, int nb) {
    const Point2 A = eg.nodes[na];
    const Point2 B = eg.nodes[nb];
    const double fwd = std::atan2(B.y - A.y, B.x - A.x);
    const double bwd = std::atan2(A.y - B.y, A.x - B.x);
    const double len = dist(A, B);
    const int h = static_cast<int>(eg.hedges.size());
    HalfEdge he;
    he.from = na;
    he.to = nb;
    he.twin = h + 1;
    he.dep_angle = fwd;
    he.arr_angle = fwd;
    he.length = len;
    eg.hedges.push_back(he);
    he.from = nb;
    he.to = na;
    he.twin = h;
    he.dep_angle = bwd;
    he.arr_angle = bwd;
    eg.hedges.push_back(he);
  };

  auto add_cut_node = [&](Point2 p) {
    const Point2 d = p - w.center;
    const Point2 q = w.center + d * (w.radius / norm(d));
    const int id = static_cast<int>(eg.nodes.size());
    eg.nodes.push_back(q);
    bnodes.push_back({id, std::atan2(q.y - w.center.y, q.x - w.center.x)});
    return id;
  };

  for (int l = 0; l < static_cast<int>(g.links.size()); ++l) {
    int a = g.links[l].first;
    int b = g.links[l].second;
    if (side[a] == Side::Out) std::swap(a, b);
    const Point2 A = g.nodes[a];
    const Point2 B = g.nodes[b];
    const Point2 d = B - A;
    const double len = dist(A, B);

    if (side[a] != Side::Out && side[b] != Side::Out) {
      add_segment(map[a], map[b]);
      res.ell += len;
      res.m_parts += 1;
      res.m_entire += 1;
      continue;
    }

    if (side[a] == Side::Out) {
      // both ends outside: a chord, a miss, or a graze
      const double tmin =
          std::clamp(-dot(A - w.center, d) / dot(d, d), 0.0, 1.0);
      const double dmin = dist(A + d * tmin, w.center);
      if (dmin >= w.radius - kSnapTol) {
        if (dmin < w.radius + kSnapTol) {
          throw Error(ErrorCode::DegenerateTangency,
                      "link " + std::to_string(l) + " grazes the window circle");
        }
        continue;
      }
      double t1, t2;
      circle_roots(A, d, w, t1, t2);
      const Point2 P1 = A + d * t1;
      const Point2 P2 = A + d * t2;
      require_transversal(P1, d, w, l);
      require_transversal(P2, d, w, l);
      add_segment(add_cut_node(P1), add_cut_node(P2));
      res.ell += len * (t2 - t1);
      res.m_parts += 1;
      res.m_cut2 += 1;
      res.boundary_hits += 2;
      continue;
    }

    // a inside (On+Out was rejected above, so a is strictly interior)
    double t1, t2;
    circle_roots(A, d, w, t1, t2);
    const double t = (t1 > 0.0 && t1 < 1.0) ? t1 : t2;
    const Point2 P = A + d * t;
    require_transversal(P, d, w, l);
    add_segment(map[a], add_cut_node(P));
    res.ell += len * t;
    res.m_parts += 1;
    res.m_cut1 += 1;
    res.boundary_hits += 1;
  }

  if (bnodes.empty()) {
    eg.circles.push_back({w.center, w.radius});
  } else {
    std::sort(bnodes.begin(), bnodes.end(),
              [](const BoundaryNode& x, const BoundaryNode& y) { return x.phi < y.phi; });
    const int m = static_cast<int>(bnodes.size());
    for (int i = 0; i < m; ++i) {
      const BoundaryNode& u = bnodes[i];
      const BoundaryNode& v = bnodes[(i + 1) % m];
      double sweep = wrap_2pi(v.phi - u.phi);
      if (m == 1) sweep = 2.0 * kPi;
      if (sweep * w.radius < kSnapTol) {
        throw Error(ErrorCode::DegenerateTangency,
                    "two window boundary nodes coincide on the circle");
      }
      const int h = static_cast<int>(eg.hedges.size());
      HalfEdge ccw;
      ccw.from = u.id;
      ccw.to = v.id;
      ccw.twin = h + 1;
      ccw.dep_angle = wrap_pm_pi(u.phi + 0.5 * kPi);
      ccw.arr_angle = wrap_pm_pi(v.phi + 0.5 * kPi);
      ccw.length = w.radius * sweep;
      ccw.intrinsic_turn = sweep;
      ccw.is_arc = true;
      ccw.center = w.center;
      ccw.radius = w.radius;
      ccw.a0 = u.phi;
      ccw.sweep = sweep;
      eg.hedges.push_back(ccw);
      HalfEdge cw;
      cw.from = v.id;
      cw.to = u.id;
      cw.twin = h;
      cw.dep_angle = wrap_pm_pi(v.phi - 0.5 * kPi);
      cw.arr_angle = wrap_pm_pi(u.phi - 0.5 * kPi);
      cw.length = w.radius * sweep;
      cw.intrinsic_turn = -sweep;
      cw.is_arc = true;
      cw.center = w.center;
      cw.radius = w.radius;
      cw.a0 = v.phi;
      cw.sweep = -sweep;
      eg.hedges.push_back(cw);
    }
  }

  eg.index();
  res.boundary_node_count = static_cast<int>(bnodes.size());
  res.eg = std::move(eg);
  return res;
}

}  // namespace tess

#include "tess/faces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tess/error.hpp"

namespace tess {
namespace {

double hedge_signed_area(const EmbeddedGraph& eg, const HalfEdge& h) {
  const Point2 a = eg.nodes[h.from];
  const Point2 b = eg.nodes[h.to];
  if (!h.is_arc) return 0.5 * cross(a, b);
  return 0.5 * (h.center.x * (b.y - a.y) - h.center.y * (b.x - a.x) +
                h.radius * h.radius * h.sweep);
}

double point_arc_dist(Point2 p, const HalfEdge& h, const EmbeddedGraph& eg) {
  const double d = dist(p, h.center);
  const double ang = wrap_2pi(std::atan2(p.y - h.center.y, p.x - h.center.x) - h.a0);
  const double span = std::abs(h.sweep);
  const bool within = h.sweep > 0 ? ang <= span : wrap_2pi(-ang) <= span;
  if (within || span >= 2.0 * kPi - kAngleTol) return std::abs(d - h.radius);
  return std::min(dist(p, eg.nodes[h.from]), dist(p, eg.nodes[h.to]));
}

double point_circuit_dist(const FaceSet& fs, int ci, Point2 p) {
  const Circuit& c = fs.circuits[ci];
  if (c.circle >= 0) {
    const FullCircle& fc = fs.eg.circles[c.circle];
    return std::abs(dist(p, fc.center) - fc.radius);
  }
  double best = std::numeric_limits<double>::infinity();
  for (const CircuitVisit& v : c.visits) {
    const HalfEdge& h = fs.eg.hedges[v.hedge];
    const double d = h.is_arc
                         ? point_arc_dist(p, h, fs.eg)
                         : point_segment_dist(p, fs.eg.nodes[h.from], fs.eg.nodes[h.to]);
    best = std::min(best, d);
  }
  return best;
}

struct BBox {
  double xlo = std::numeric_limits<double>::infinity();
  double ylo = std::numeric_limits<double>::infinity();
  double xhi = -std::numeric_limits<double>::infinity();
  double yhi = -std::numeric_limits<double>::infinity();

  void add(Point2 p) {
    xlo = std::min(xlo, p.x);
    ylo = std::min(ylo, p.y);
    xhi = std::max(xhi, p.x);
    yhi = std::max(yhi, p.y);
  }
  bool contains(Point2 p, double pad) const {
    return p.x >= xlo - pad && p.x <= xhi + pad && p.y >= ylo - pad && p.y <= yhi + pad;
  }
};

BBox circuit_bbox(const FaceSet& fs, int ci) {
  BBox b;
  const Circuit& c = fs.circuits[ci];
  if (c.circle >= 0) {
    const FullCircle& fc = fs.eg.circles[c.circle];
    b.add({fc.center.x - fc.radius, fc.center.y - fc.radius});
    b.add({fc.center.x + fc.radius, fc.center.y + fc.radius});
    return b;
  }
  for (const CircuitVisit& v : c.visits) {
    const HalfEdge& h = fs.eg.hedges[v.hedge];
    if (h.is_arc) {
      b.add({h.center.x - h.radius, h.center.y - h.radius});
      b.add({h.center.x + h.radius, h.center.y + h.radius});
    } else {
      b.add(fs.eg.nodes[h.from]);
      b.add(fs.eg.nodes[h.to]);
    }
  }
  return b;
}

}  // namespace

int EmbeddedGraph::first_exit(int h) const {
  const int v = hedges[h].to;
  const int tw = hedges[h].twin;
  const auto& ring = out[v];
  const int sz = static_cast<int>(ring.size());
  const int idx = pos_in_out[tw];
  return ring[(idx + sz - 1) % sz];
}

void EmbeddedGraph::index() {
  out.assign(nodes.size(), {});
  for (int h = 0; h < static_cast<int>(hedges.size()); ++h) {
    out[hedges[h].from].push_back(h);
  }
  for (auto& ring : out) {
    std::sort(ring.begin(), ring.end(), [&](int a, int b) {
      if (hedges[a].dep_angle != hedges[b].dep_angle)
        return hedges[a].dep_angle < hedges[b].dep_angle;
      return a < b;
    });
  }
  pos_in_out.assign(hedges.size(), -1);
  for (int v = 0; v < static_cast<int>(out.size()); ++v) {
    for (int i = 0; i < static_cast<int>(out[v].size()); ++i) {
      pos_in_out[out[v][i]] = i;
    }
  }
  isolated.clear();
  for (int v = 0; v < static_cast<int>(nodes.size()); ++v) {
    if (out[v].empty()) isolated.push_back(v);
  }
}

EmbeddedGraph embed(const GeometricGraph& g) {
  EmbeddedGraph eg;
  eg.nodes = g.nodes;
  eg.hedges.resize(2 * g.links.size());
  for (int l = 0; l < static_cast<int>(g.links.size()); ++l) {
    const auto [a, b] = g.links[l];
    const Point2 d = g.nodes[b] - g.nodes[a];
    const double len = norm(d);
    HalfEdge& fwd = eg.hedges[2 * l];
    fwd.from = a;
    fwd.to = b;
    fwd.twin = 2 * l + 1;
    fwd.link = l;
    fwd.dep_angle = fwd.arr_angle = std::atan2(d.y, d.x);
    fwd.length = len;
    HalfEdge& rev = eg.hedges[2 * l + 1];
    rev.from = b;
    rev.to = a;
    rev.twin = 2 * l;
    rev.link = l;
    rev.dep_angle = rev.arr_angle = std::atan2(-d.y, -d.x);
    rev.length = len;
  }
  eg.index();
  return eg;
}

std::vector<Circuit> extract_circuits(const EmbeddedGraph& eg) {
  std::vector<Circuit> circuits;
  std::vector<char> visited(eg.hedges.size(), 0);
  for (int start = 0; start < static_cast<int>(eg.hedges.size()); ++start) {
    if (visited[start]) continue;
    Circuit c;
    int cur = start;
    std::size_t guard = 0;
    do {
      if (visited[cur] || ++guard > eg.hedges.size() + 1) {
        throw Error(ErrorCode::NonClosingWalk,
                    "walk from hedge " + std::to_string(start) + " does not close");
      }
      visited[cur] = 1;
      const HalfEdge& h = eg.hedges[cur];
      const int next = eg.first_exit(cur);
      double zeta;
      if (next == h.twin) {
        zeta = -kPi;
      } else {
        zeta = wrap_pm_pi(eg.hedges[next].dep_angle - h.arr_angle);
        // Rounding can push an exact reversal to just below +pi; fold it back.
        if (zeta > kPi - kAngleTol) zeta -= 2.0 * kPi;
      }
      c.visits.push_back({cur, zeta});
      c.turning += zeta + h.intrinsic_turn;
      c.area += hedge_signed_area(eg, h);
      c.perimeter += h.length;
      if (std::abs(zeta) > kAngleTol) ++c.corner_count;
      if (h.is_arc) c.has_arc = true;
      cur = next;
    } while (cur != start);

    if (std::abs(c.turning - 2.0 * kPi) < kTurnSumTol) {
      c.orientation = 1;
    } else if (std::abs(c.turning + 2.0 * kPi) < kTurnSumTol) {
      c.orientation = -1;
    } else {
      throw Error(ErrorCode::TurningSumAnomaly,
                  "circuit turning sum " + std::to_string(c.turning) +
                      " is not one full turn");
    }
    circuits.push_back(std::move(c));
  }

  for (int i = 0; i < static_cast<int>(eg.circles.size()); ++i) {
    const FullCircle& fc = eg.circles[i];
    for (int orient : {1, -1}) {
      Circuit c;
      c.circle = i;
      c.orientation = orient;
      c.turning = orient * 2.0 * kPi;
      c.area = orient * kPi * fc.radius * fc.radius;
      c.perimeter = 2.0 * kPi * fc.radius;
      c.has_arc = true;
      circuits.push_back(std::move(c));
    }
  }
  return circuits;
}

double winding_number(const FaceSet& fs, int ci, Point2 p) {
  const Circuit& c = fs.circuits[ci];
  if (c.circle >= 0) {
    const FullCircle& fc = fs.eg.circles[c.circle];
    if (dist(p, fc.center) < fc.radius) return c.orientation * 2.0 * kPi;
    return 0.0;
  }
  double total = 0.0;
  for (const CircuitVisit& v : c.visits) {
    const HalfEdge& h = fs.eg.hedges[v.hedge];
    const Point2 a = fs.eg.nodes[h.from];
    const Point2 b = fs.eg.nodes[h.to];
    if (!h.is_arc) {
      total += wrap_pm_pi(std::atan2(b.y - p.y, b.x - p.x) -
                          std::atan2(a.y - p.y, a.x - p.x));
      continue;
    }
    if (h.from == h.to && std::abs(std::abs(h.sweep) - 2.0 * kPi) < kAngleTol) {
      // Whole circle as a single hedge: one full turn as seen from inside.
      total += (dist(p, h.center) < h.radius ? 1.0 : 0.0) *
               (h.sweep > 0 ? 2.0 * kPi : -2.0 * kPi);
      continue;
    }
    const double pa = std::atan2(a.y - p.y, a.x - p.x);
    const double pb = std::atan2(b.y - p.y, b.x - p.x);
    // Bearings from a point strictly inside the circle change monotonically
    // along an arc, so the wrapped difference is exact.
    total += h.sweep > 0 ? wrap_2pi(pb - pa) : -wrap_2pi(pa - pb);
  }
  return total;
}

namespace {

// Innermost anticlockwise circuit strictly containing p, or -1.  Circuits
// passing within kSnapTol of p are not containers of it.
int innermost_container(const FaceSet& fs, const std::vector<int>& plus,
                        const std::vector<BBox>& boxes, Point2 p) {
  int best = -1;
  double best_area = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < plus.size(); ++i) {
    const int ci = plus[i];
    if (!boxes[i].contains(p, kSnapTol)) continue;
    if (point_circuit_dist(fs, ci, p) < kSnapTol) continue;
    const double w = winding_number(fs, ci, p) / (2.0 * kPi);
    const double rounded = std::round(w);
    if (std::abs(w - rounded) > 0.25) {
      throw Error(ErrorCode::AmbiguousContainment,
                  "winding number " + std::to_string(w) + " is not near an integer");
    }
    if (rounded < 0.5) continue;
    const double a = std::abs(fs.circuits[ci].area);
    if (a < best_area) {
      best_area = a;
      best = ci;
    }
  }
  return best;
}

Point2 hedge_point_at(const EmbeddedGraph& eg, const HalfEdge& h, double along) {
  if (!h.is_arc) {
    const Point2 a = eg.nodes[h.from];
    const Point2 b = eg.nodes[h.to];
    const double t = h.length > 0 ? along / h.length : 0.0;
    return a + t * (b - a);
  }
  const double frac = h.length > 0 ? along / h.length : 0.0;
  const double ang = h.a0 + h.sweep * frac;
  return {h.center.x + h.radius * std::cos(ang), h.center.y + h.radius * std::sin(ang)};
}

}  // namespace

FaceSet extract_faces(EmbeddedGraph eg) {
  FaceSet fs;
  fs.eg = std::move(eg);
  fs.circuits = extract_circuits(fs.eg);

  std::vector<int> plus;
  for (int i = 0; i < static_cast<int>(fs.circuits.size()); ++i) {
    if (fs.circuits[i].orientation > 0) plus.push_back(i);
  }
  std::vector<BBox> boxes;
  boxes.reserve(plus.size());
  for (int ci : plus) boxes.push_back(circuit_bbox(fs, ci));

  std::vector<int> circuit_face(fs.circuits.size(), -1);
  fs.faces.resize(plus.size() + 1);
  for (std::size_t i = 0; i < plus.size(); ++i) {
    fs.faces[i].outer = plus[i];
    circuit_face[plus[i]] = static_cast<int>(i);
  }
  fs.sink = static_cast<int>(plus.size());
  fs.faces[fs.sink].outer = -1;

  for (int ci = 0; ci < static_cast<int>(fs.circuits.size()); ++ci) {
    const Circuit& c = fs.circuits[ci];
    if (c.orientation > 0) continue;
    int owner = fs.sink;
    Point2 rep{};
    bool have_rep = false;
    if (c.circle < 0) {
      for (const CircuitVisit& v : c.visits) {
        const HalfEdge& h = fs.eg.hedges[v.hedge];
        if (h.is_arc) continue;
        rep = 0.5 * (fs.eg.nodes[h.from] + fs.eg.nodes[h.to]);
        have_rep = true;
        break;
      }
    }
    // A clockwise circuit made purely of boundary arcs rings the whole
    // window from outside; nothing contains it.
    if (have_rep) {
      const int container = innermost_container(fs, plus, boxes, rep);
      if (container >= 0) owner = circuit_face[container];
    }
    fs.faces[owner].holes.push_back(ci);
    circuit_face[ci] = owner;
  }

  for (int v : fs.eg.isolated) {
    const int container = innermost_container(fs, plus, boxes, fs.eg.nodes[v]);
    fs.faces[container >= 0 ? circuit_face[container] : fs.sink].isolated.push_back(v);
  }

  for (Face& f : fs.faces) {
    std::vector<int> cs;
    if (f.outer >= 0) cs.push_back(f.outer);
    cs.insert(cs.end(), f.holes.begin(), f.holes.end());
    for (int ci : cs) {
      const Circuit& c = fs.circuits[ci];
      f.edge_visits += c.node_visit_count();
      f.corner_count += c.corner_count;
      f.area += c.area;
      f.perimeter += c.perimeter;
      if (c.has_arc) f.touches_circle = true;
    }
    f.vertex_count = f.edge_visits + static_cast<int>(f.isolated.size());
    f.chi = (f.outer >= 0 ? 1 : 0) - static_cast<int>(f.holes.size()) -
            static_cast<int>(f.isolated.size());
  }
  return fs;
}

Point2 face_reference_point(const FaceSet& fs, int face) {
  const Face& f = fs.faces[face];
  double best_len = -1.0;
  Point2 best_mid{};
  bool found = false;

  std::vector<int> cs;
  if (f.outer >= 0) cs.push_back(f.outer);
  cs.insert(cs.end(), f.holes.begin(), f.holes.end());

  for (int ci : cs) {
    const Circuit& c = fs.circuits[ci];
    if (c.circle >= 0) continue;
    const int n = static_cast<int>(c.visits.size());

    std::vector<int> corners;
    for (int t = 0; t < n; ++t) {
      if (std::abs(c.visits[t].zeta) > kAngleTol) corners.push_back(t);
    }

    auto side_at = [&](int first, int count) {
      double len = 0.0;
      for (int k = 0; k < count; ++k) {
        len += fs.eg.hedges[c.visits[(first + k) % n].hedge].length;
      }
      double along = 0.5 * len;
      Point2 mid{};
      for (int k = 0; k < count; ++k) {
        const HalfEdge& h = fs.eg.hedges[c.visits[(first + k) % n].hedge];
        if (along <= h.length || k == count - 1) {
          mid = hedge_point_at(fs.eg, h, std::min(along, h.length));
          break;
        }
        along -= h.length;
      }
      const bool better =
          len > best_len ||
          (len == best_len &&
           (mid.x < best_mid.x || (mid.x == best_mid.x && mid.y < best_mid.y)));
      if (better) {
        best_len = len;
        best_mid = mid;
        found = true;
      }
    };

    if (corners.empty()) {
      side_at(0, n);
      continue;
    }
    for (std::size_t j = 0; j < corners.size(); ++j) {
      const int from = corners[j];
      const int to = corners[(j + 1) % corners.size()];
      const int count = (to - from + n - 1) % n + 1;  // hedges from+1 .. to
      side_at(from + 1, count);
    }
  }

  if (!found) {
    for (int ci : cs) {
      if (fs.circuits[ci].circle >= 0) {
        return fs.eg.circles[fs.circuits[ci].circle].center;
      }
    }
    throw Error(ErrorCode::AmbiguousContainment,
                "face has no side to take a reference point from");
  }
  return best_mid;
}

FaceLocator::FaceLocator(const FaceSet& fs) : fs_(&fs) {
  face_of_.assign(fs.circuits.size(), -1);
  for (int f = 0; f < static_cast<int>(fs.faces.size()); ++f) {
    if (fs.faces[f].outer >= 0) face_of_[fs.faces[f].outer] = f;
  }
  for (int ci = 0; ci < static_cast<int>(fs.circuits.size()); ++ci) {
    if (fs.circuits[ci].orientation <= 0) continue;
    plus_.push_back(ci);
    const BBox b = circuit_bbox(fs, ci);
    box_.push_back({b.xlo, b.ylo, b.xhi, b.yhi});
  }
}

int FaceLocator::locate(Point2 p) const {
  int best = -1;
  double best_area = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < plus_.size(); ++i) {
    const auto& b = box_[i];
    if (p.x < b[0] - kSnapTol || p.x > b[2] + kSnapTol || p.y < b[1] - kSnapTol ||
        p.y > b[3] + kSnapTol) {
      continue;
    }
    const int ci = plus_[i];
    if (point_circuit_dist(*fs_, ci, p) < kSnapTol) return -1;
    const double w = winding_number(*fs_, ci, p) / (2.0 * kPi);
    const double rounded = std::round(w);
    if (std::abs(w - rounded) > 0.25) return -1;
    if (rounded < 0.5) continue;
    const double a = std::abs(fs_->circuits[ci].area);
    if (a < best_area) {
      best_area = a;
      best = ci;
    }
  }
  return best >= 0 ? face_of_[best] : -1;
}

std::vector<Point2> face_reference_points(const FaceSet& fs) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<Point2> refs(fs.faces.size(), Point2{nan, nan});
  for (int f = 0; f < static_cast<int>(fs.faces.size()); ++f) {
    if (f != fs.sink) refs[f] = face_reference_point(fs, f);
  }
  return refs;
}

void side_membership_pi_check(const FaceSet& fs, const GeometricGraph& g) {
  std::vector<int> flat_visits(g.nodes.size(), 0);
  for (const Circuit& c : fs.circuits) {
    if (c.circle >= 0) continue;
    for (const CircuitVisit& v : c.visits) {
      if (std::abs(v.zeta) <= kAngleTol) {
        ++flat_visits[fs.eg.hedges[v.hedge].to];
      }
    }
  }
  for (int v = 0; v < static_cast<int>(g.nodes.size()); ++v) {
    const VertexClass vc = classify_vertex(g, v);
    if (flat_visits[v] != vc.pi_angle_count) {
      throw Error(ErrorCode::TurningSumAnomaly,
                  "node " + std::to_string(v) + " has " +
                      std::to_string(flat_visits[v]) + " flat visits but " +
                      std::to_string(vc.pi_angle_count) + " straight gaps");
    }
  }
}

}  // namespace tess

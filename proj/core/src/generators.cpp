#include "tess/generators.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "tess/error.hpp"
#include "tess/planarize.hpp"
#include "tess/rng.hpp"

namespace tess {
namespace {

// Closed rectangle in its own frame: centre c, unit axes u and v, half
// extents hw and hh.
struct Leaf {
  Point2 c;
  Point2 u;
  Point2 v;
  double hw = 0.0;
  double hh = 0.0;
  double bx0 = 0.0, by0 = 0.0, bx1 = 0.0, by1 = 0.0;
};

bool leaf_contains(const Leaf& lf, Point2 p) {
  const Point2 d{p.x - lf.c.x, p.y - lf.c.y};
  return std::abs(d.x * lf.u.x + d.y * lf.u.y) <= lf.hw &&
         std::abs(d.x * lf.v.x + d.y * lf.v.y) <= lf.hh;
}

// Parameter interval of the segment a + t (b - a), t in [0, 1], that lies
// inside the closed leaf.  Empty intervals come back with lo > hi.
std::pair<double, double> leaf_slab_interval(const Leaf& lf, Point2 a, Point2 b) {
  double lo = 0.0, hi = 1.0;
  const Point2 d{b.x - a.x, b.y - a.y};
  const Point2 rel{a.x - lf.c.x, a.y - lf.c.y};
  const double s0[2] = {rel.x * lf.u.x + rel.y * lf.u.y,
                        rel.x * lf.v.x + rel.y * lf.v.y};
  const double ds[2] = {d.x * lf.u.x + d.y * lf.u.y,
                        d.x * lf.v.x + d.y * lf.v.y};
  const double half[2] = {lf.hw, lf.hh};
  for (int k = 0; k < 2; ++k) {
    if (std::abs(ds[k]) < 1e-300) {
      if (std::abs(s0[k]) > half[k]) return {1.0, 0.0};
      continue;
    }
    double t0 = (-half[k] - s0[k]) / ds[k];
    double t1 = (half[k] - s0[k]) / ds[k];
    if (t0 > t1) std::swap(t0, t1);
    lo = std::max(lo, t0);
    hi = std::min(hi, t1);
  }
  return {lo, hi};
}

// Removes [lo, hi] from a sorted list of disjoint intervals.
void subtract_interval(std::vector<std::pair<double, double>>& kept, double lo,
                       double hi) {
  if (!(hi > lo)) return;
  std::vector<std::pair<double, double>> next;
  next.reserve(kept.size() + 1);
  for (const auto& [a, b] : kept) {
    if (b <= lo || a >= hi) {
      next.emplace_back(a, b);
      continue;
    }
    if (a < lo) next.emplace_back(a, lo);
    if (b > hi) next.emplace_back(hi, b);
  }
  kept.swap(next);
}

}  // namespace

GeometricGraph poisson_lines(double intensity, const Window& w, double margin,
                             std::uint64_t seed) {
  if (!(intensity > 0.0) || !(margin >= 0.0)) {
    throw Error(ErrorCode::ConfigError, "poisson_lines: bad intensity or margin");
  }
  const double R = w.radius + margin;
  Rng rng(seed);
  const long long n = rng.poisson(2.0 * intensity * R);
  std::vector<Segment> segs;
  segs.reserve(static_cast<std::size_t>(std::max<long long>(n, 0)));
  for (long long i = 0; i < n; ++i) {
    const double p = rng.uniform(-R, R);
    const double phi = rng.uniform(0.0, kPi);
    const double nx = std::cos(phi), ny = std::sin(phi);
    const double tx = -ny, ty = nx;
    const double half = std::sqrt(std::max(0.0, R * R - p * p));
    const Point2 foot{w.center.x + p * nx, w.center.y + p * ny};
    segs.push_back({{foot.x - half * tx, foot.y - half * ty},
                    {foot.x + half * tx, foot.y + half * ty}});
  }
  return planarize(segs);
}

GeometricGraph delete_edge_interiors(const GeometricGraph& g, double q,
                                     std::uint64_t seed) {
  if (!(q >= 0.0) || !(q <= 1.0)) {
    throw Error(ErrorCode::ConfigError, "delete_edge_interiors: q outside [0, 1]");
  }
  Rng rng(seed);
  std::vector<std::pair<int, int>> kept;
  kept.reserve(g.links.size());
  for (const auto& L : g.links) {
    if (rng.uniform() >= q) kept.push_back(L);
  }
  return build_graph(g.nodes, kept);
}

GeometricGraph falling_leaves(const LeafConfig& cfg, const Window& w,
                              std::uint64_t seed) {
  if (!(cfg.w_min > 0.0) || !(cfg.w_max >= cfg.w_min) || !(cfg.h_min > 0.0) ||
      !(cfg.h_max >= cfg.h_min) || cfg.budget <= 0) {
    throw Error(ErrorCode::ConfigError, "falling_leaves: bad leaf dimensions");
  }
  const double max_diag = std::hypot(cfg.w_max, cfg.h_max);
  const double r_cov = w.radius + max_diag;   // must end up fully covered
  const double r_gen = w.radius + 2.0 * max_diag;  // leaf centres

  // Conservative coverage grid over the square circumscribing the coverage
  // disc: a cell counts as covered only when one leaf contains all four of
  // its corners.  Overshooting coverage is harmless; stopping early is not.
  const double cell = std::min(cfg.w_min, cfg.h_min) / 3.0;
  const int nc = static_cast<int>(std::ceil(2.0 * r_cov / cell));
  std::vector<char> covered(static_cast<std::size_t>(nc) * nc, 0);
  long long uncovered = static_cast<long long>(nc) * nc;
  const double gx0 = w.center.x - r_cov;
  const double gy0 = w.center.y - r_cov;

  Rng rng(seed);
  std::vector<Leaf> leaves;
  std::vector<Segment> pieces;
  const double keep_len = 10.0 * kGuardTol;
  const double prune = r_cov + max_diag;

  long long placed = 0;
  while (placed < cfg.budget && uncovered > 0) {
    ++placed;
    Leaf lf;
    lf.c = {w.center.x + rng.uniform(-r_gen, r_gen),
            w.center.y + rng.uniform(-r_gen, r_gen)};
    const double lw = rng.uniform(cfg.w_min, cfg.w_max);
    const double lh = rng.uniform(cfg.h_min, cfg.h_max);
    const double ang = cfg.isotropic ? rng.uniform(0.0, kPi) : cfg.fixed_angle;
    lf.u = {std::cos(ang), std::sin(ang)};
    lf.v = {-lf.u.y, lf.u.x};
    lf.hw = lw / 2.0;
    lf.hh = lh / 2.0;
    Point2 corner[4];
    for (int k = 0; k < 4; ++k) {
      const double sx = (k == 0 || k == 3) ? -lf.hw : lf.hw;
      const double sy = (k < 2) ? -lf.hh : lf.hh;
      corner[k] = {lf.c.x + sx * lf.u.x + sy * lf.v.x,
                   lf.c.y + sx * lf.u.y + sy * lf.v.y};
    }
    lf.bx0 = lf.bx1 = corner[0].x;
    lf.by0 = lf.by1 = corner[0].y;
    for (int k = 1; k < 4; ++k) {
      lf.bx0 = std::min(lf.bx0, corner[k].x);
      lf.bx1 = std::max(lf.bx1, corner[k].x);
      lf.by0 = std::min(lf.by0, corner[k].y);
      lf.by1 = std::max(lf.by1, corner[k].y);
    }

    // Visible boundary: each edge minus its parts lying inside an earlier
    // (hence on-top) leaf.
    for (int e = 0; e < 4; ++e) {
      const Point2 a = corner[e];
      const Point2 b = corner[(e + 1) % 4];
      std::vector<std::pair<double, double>> kept{{0.0, 1.0}};
      for (const Leaf& up : leaves) {
        if (up.bx1 < std::min(a.x, b.x) || up.bx0 > std::max(a.x, b.x) ||
            up.by1 < std::min(a.y, b.y) || up.by0 > std::max(a.y, b.y)) {
          continue;
        }
        const auto [lo, hi] = leaf_slab_interval(up, a, b);
        if (hi > lo) subtract_interval(kept, lo, hi);
        if (kept.empty()) break;
      }
      const double len = dist(a, b);
      for (const auto& [t0, t1] : kept) {
        if ((t1 - t0) * len < keep_len) continue;
        const Segment s{{a.x + t0 * (b.x - a.x), a.y + t0 * (b.y - a.y)},
                        {a.x + t1 * (b.x - a.x), a.y + t1 * (b.y - a.y)}};
        const double px0 = std::min(s.a.x, s.b.x), px1 = std::max(s.a.x, s.b.x);
        const double py0 = std::min(s.a.y, s.b.y), py1 = std::max(s.a.y, s.b.y);
        if (px1 < w.center.x - prune || px0 > w.center.x + prune ||
            py1 < w.center.y - prune || py0 > w.center.y + prune) {
          continue;
        }
        pieces.push_back(s);
      }
    }
    leaves.push_back(lf);

    // Mark grid cells this leaf swallows whole.
    const int ix0 = std::max(0, static_cast<int>((lf.bx0 - gx0) / cell));
    const int ix1 = std::min(nc - 1, static_cast<int>((lf.bx1 - gx0) / cell));
    const int iy0 = std::max(0, static_cast<int>((lf.by0 - gy0) / cell));
    const int iy1 = std::min(nc - 1, static_cast<int>((lf.by1 - gy0) / cell));
    for (int iy = iy0; iy <= iy1; ++iy) {
      for (int ix = ix0; ix <= ix1; ++ix) {
        const std::size_t idx = static_cast<std::size_t>(iy) * nc + ix;
        if (covered[idx]) continue;
        const double x0 = gx0 + ix * cell, x1 = x0 + cell;
        const double y0 = gy0 + iy * cell, y1 = y0 + cell;
        if (leaf_contains(lf, {x0, y0}) && leaf_contains(lf, {x1, y0}) &&
            leaf_contains(lf, {x0, y1}) && leaf_contains(lf, {x1, y1})) {
          covered[idx] = 1;
          --uncovered;
        }
      }
    }
  }
  if (uncovered > 0) {
    throw Error(ErrorCode::CoverageTimeout,
                "falling_leaves: budget of " + std::to_string(cfg.budget) +
                    " leaves left " + std::to_string(uncovered) +
                    " grid cells uncovered");
  }
  return planarize(pieces);
}

BlockFixture hexagon_fixture(HexVariant variant, int copies, Point2 off) {
  if (copies < 2) {
    throw Error(ErrorCode::ConfigError, "hexagon_fixture: copies must be >= 2");
  }
  // Half height just under sqrt(3)/2, exactly representable, so slant sides
  // come out strictly shorter than the two horizontal sides and the ref-point
  // tie-break lands on the bottom side in every cell.
  const double h = 0.8662109375;
  std::vector<Segment> segs;
  std::vector<Point2> lone;
  for (int i = -copies; i <= copies; ++i) {
    for (int j = -copies; j <= copies; ++j) {
      const Point2 c{1.5 * i + off.x,
                     2.0 * h * j + ((i & 1) ? h : 0.0) + off.y};
      const Point2 v[6] = {{c.x + 1.0, c.y},     {c.x + 0.5, c.y + h},
                           {c.x - 0.5, c.y + h}, {c.x - 1.0, c.y},
                           {c.x - 0.5, c.y - h}, {c.x + 0.5, c.y - h}};
      for (int k = 0; k < 6; ++k) segs.push_back({v[k], v[(k + 1) % 6]});
      if (variant == HexVariant::PointHole) {
        lone.push_back(c);
      } else {
        segs.push_back({{c.x - 0.15, c.y}, {c.x + 0.15, c.y}});
      }
    }
  }
  BlockFixture bf;
  bf.graph = planarize(segs, lone);
  bf.block_origin = {0.625 + off.x, 0.25 * h + off.y};
  bf.block_w = 3.0;
  bf.block_h = 2.0 * h;
  return bf;
}

Fig4aFixture fig4a_fixture(int copies, Point2 off) {
  if (copies < 2) {
    throw Error(ErrorCode::ConfigError, "fig4a_fixture: copies must be >= 2");
  }
  // All local coordinates are multiples of 1/32 so periodic copies and the
  // floor/ceiling length ties are exact.
  static const double W[][4] = {
      {0, 0, 0.78125, 0},         {0.78125, 0, 2, 0},
      {0, 0, 0, 0.5},             {0, 0.5, 0, 1},
      {0, 0.5, 0.40625, 0.5},     {0.40625, 0.5, 0.78125, 0.5},
      {0.78125, 0, 0.78125, 0.5}, {0.40625, 0.5, 0.40625, 0.6875},
      {0.40625, 0.6875, 1.5, 0.6875},
      {1.5, 0.6875, 2, 0},        {0.78125, 0.5, 1.09375, 0.625},
  };
  static const double RECT[4][2] = {
      {0.90625, 0.75}, {1.34375, 0.75}, {1.34375, 0.9375}, {0.90625, 0.9375}};
  static const double T1[3][2] = {{0.09375, 0.09375}, {0.3125, 0.09375},
                                  {0.15625, 0.3125}};
  static const double T2[3][2] = {{0.4375, 0.09375}, {0.65625, 0.09375},
                                  {0.59375, 0.34375}};
  std::vector<Segment> segs;
  for (int i = -copies; i <= copies; ++i) {
    for (int j = -copies; j <= copies; ++j) {
      const double bx = 2.0 * i + off.x;
      const double by = 1.0 * j + off.y;
      for (const auto& s : W) {
        segs.push_back({{bx + s[0], by + s[1]}, {bx + s[2], by + s[3]}});
      }
      for (int k = 0; k < 4; ++k) {
        segs.push_back({{bx + RECT[k][0], by + RECT[k][1]},
                        {bx + RECT[(k + 1) % 4][0], by + RECT[(k + 1) % 4][1]}});
      }
      for (int k = 0; k < 3; ++k) {
        segs.push_back({{bx + T1[k][0], by + T1[k][1]},
                        {bx + T1[(k + 1) % 3][0], by + T1[(k + 1) % 3][1]}});
        segs.push_back({{bx + T2[k][0], by + T2[k][1]},
                        {bx + T2[(k + 1) % 3][0], by + T2[(k + 1) % 3][1]}});
      }
    }
  }
  Fig4aFixture fx;
  fx.graph = planarize(segs);
  fx.block_origin = {off.x + 0.05, off.y + 0.025};
  fx.block_w = 2.0;
  fx.block_h = 1.0;
  fx.anchors = {{off.x + 1.125, off.y + 0.84375}, {off.x + 0.2, off.y + 0.85},
                {off.x + 0.1875, off.y + 0.16},   {off.x + 0.5625, off.y + 0.17},
                {off.x + 0.72, off.y + 0.45},     {off.x + 1.2, off.y + 0.3}};
  fx.anchor_names = {"island", "corridor", "wedge_a",
                     "wedge_b", "room",     "pocket"};
  fx.grouping_a = {1, 2, 0, 0, 1, 3};
  return fx;
}

}  // namespace tess

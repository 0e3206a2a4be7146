#include "tess/window_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tess/error.hpp"
#include "tess/rational.hpp"
#include "tess/rng.hpp"

namespace tess {

long long WindowCounts::sum_n() const {
  long long s = 0;
  for (const auto& [k, v] : n_verts) s += v;
  return s;
}

long long WindowCounts::sum_kn() const {
  long long s = 0;
  for (const auto& [k, v] : n_verts) s += static_cast<long long>(k) * v;
  return s;
}

long long WindowCounts::n_at(int k) const {
  const auto it = n_verts.find(k);
  return it == n_verts.end() ? 0 : it->second;
}

long long WindowCounts::n_pi_at(int k) const {
  const auto it = n_pi_verts.find(k);
  return it == n_pi_verts.end() ? 0 : it->second;
}

long long WindowCounts::pi_events() const {
  long long s = 0;
  for (const auto& [k, v] : n_pi_verts) s += (k == 2 ? 2 : 1) * v;
  return s;
}

namespace {

constexpr double kThetaTwoBand = 0.05;

template <typename NodePred, typename PointPred>
void census(const GeometricGraph& g, const std::vector<Point2>& refs, int sink,
            WindowCounts& wc, NodePred&& node_in, PointPred&& point_in) {
  for (int v = 0; v < static_cast<int>(g.nodes.size()); ++v) {
    if (!node_in(v)) continue;
    const VertexClass vc = classify_vertex(g, v);
    ++wc.n_verts[vc.valency];
    if (vc.is_pi) ++wc.n_pi_verts[vc.valency];
  }
  for (int l = 0; l < static_cast<int>(g.links.size()); ++l) {
    if (point_in(g.link_midpoint(l))) ++wc.n_edges;
    if (node_in(g.links[l].first)) ++wc.n_edge_ends;
    if (node_in(g.links[l].second)) ++wc.n_edge_ends;
  }
  for (int f = 0; f < static_cast<int>(refs.size()); ++f) {
    if (f == sink) continue;
    const Point2 p = refs[f];
    if (std::isnan(p.x)) continue;
    if (point_in(p)) ++wc.n_cells;
  }
}

double rect_clip_length(Point2 a, Point2 b, double x0, double y0, double x1, double y1) {
  const Point2 d = b - a;
  double t0 = 0.0, t1 = 1.0;
  const double p[4] = {-d.x, d.x, -d.y, d.y};
  const double q[4] = {a.x - x0, x1 - a.x, a.y - y0, y1 - a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return 0.0;
      continue;
    }
    const double t = q[i] / p[i];
    if (p[i] < 0.0) {
      t0 = std::max(t0, t);
    } else {
      t1 = std::min(t1, t);
    }
  }
  return t1 > t0 ? norm(d) * (t1 - t0) : 0.0;
}

double rel_gap(double lhs, double rhs) {
  const double m = std::max(std::abs(lhs), std::abs(rhs));
  if (m == 0.0) return 0.0;
  return std::abs(lhs - rhs) / m;
}

}  // namespace

WindowAnalysis analyze_window(const GeometricGraph& g, const FaceSet& raw_faces,
                              const std::vector<Point2>& raw_refs, const Window& w) {
  ClipResult cr = clip_to_window(g, w);
  WindowAnalysis wa;
  wa.faces = extract_faces(std::move(cr.eg));
  WindowCounts& wc = wa.counts;
  wc.center = w.center;
  wc.r = w.radius;
  wc.area = kPi * w.radius * w.radius;

  auto node_in = [&](int v) {
    const double d = dist(g.nodes[v], w.center);
    return std::abs(d - w.radius) >= kSnapTol && d < w.radius;
  };
  auto point_in = [&](Point2 p) { return dist(p, w.center) <= w.radius; };
  census(g, raw_refs, raw_faces.sink, wc, node_in, point_in);

  wc.ell = cr.ell;
  wc.M = cr.m_parts;
  wc.M_prime = cr.m_entire;
  wc.M_b = cr.boundary_hits;
  wc.M_b1 = cr.m_cut1;
  wc.M_b2 = cr.m_cut2;

  for (int f = 0; f < static_cast<int>(wa.faces.faces.size()); ++f) {
    if (f == wa.faces.sink) continue;
    const Face& face = wa.faces.faces[f];
    ++wc.N;
    if (!face.touches_circle) ++wc.N_prime;
    wc.script_A += face.area;
    wc.script_L += face.perimeter;
    wc.script_V += face.vertex_count;
    wc.script_E += face.edge_visits;
    wc.script_S += face.corner_count;
    wc.script_C += face.corner_count;
    wc.script_X += face.chi;
  }
  return wa;
}

WindowAnalysis analyze_block(const GeometricGraph& g, const FaceSet& raw_faces,
                             const std::vector<Point2>& raw_refs, Point2 origin,
                             double bw, double bh) {
  if (!(bw > 0.0) || !(bh > 0.0)) {
    throw Error(ErrorCode::ConfigError, "block dimensions must be positive");
  }
  WindowAnalysis wa;
  WindowCounts& wc = wa.counts;
  wc.block_mode = true;
  wc.block_origin = origin;
  wc.block_w = bw;
  wc.block_h = bh;
  wc.area = bw * bh;

  auto point_in = [&](Point2 p) {
    return p.x >= origin.x && p.x < origin.x + bw && p.y >= origin.y && p.y < origin.y + bh;
  };
  auto node_in = [&](int v) { return point_in(g.nodes[v]); };
  census(g, raw_refs, raw_faces.sink, wc, node_in, point_in);

  for (int l = 0; l < static_cast<int>(g.links.size()); ++l) {
    wc.ell += rect_clip_length(g.nodes[g.links[l].first], g.nodes[g.links[l].second],
                               origin.x, origin.y, origin.x + bw, origin.y + bh);
  }
  wc.M = wc.n_edges;
  wc.M_prime = wc.n_edges;

  for (int f = 0; f < static_cast<int>(raw_faces.faces.size()); ++f) {
    if (f == raw_faces.sink) continue;
    if (std::isnan(raw_refs[f].x) || !point_in(raw_refs[f])) continue;
    const Face& face = raw_faces.faces[f];
    ++wc.N;
    ++wc.N_prime;
    wc.script_A += face.area;
    wc.script_L += face.perimeter;
    wc.script_V += face.vertex_count;
    wc.script_E += face.edge_visits;
    wc.script_S += face.corner_count;
    wc.script_C += face.corner_count;
    wc.script_X += face.chi;
  }
  return wa;
}

IdentityReport check_identities(const WindowCounts& wc) {
  IdentityReport rep;
  auto exact_row = [&](const std::string& name, long long lhs, long long rhs) {
    rep.entries.push_back(
        {name, lhs == rhs, static_cast<double>(lhs), static_cast<double>(rhs)});
    rep.all_pass = rep.all_pass && lhs == rhs;
  };
  auto measure_row = [&](const std::string& name, double lhs, double rhs) {
    const bool pass =
        std::abs(lhs - rhs) <= kRelTol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
    rep.entries.push_back({name, pass, lhs, rhs});
    rep.all_pass = rep.all_pass && pass;
  };

  if (wc.block_mode) {
    measure_row("area", wc.script_A, wc.block_w * wc.block_h);
    measure_row("length", wc.script_L, 2.0 * wc.ell);
  } else {
    measure_row("area", wc.script_A, kPi * wc.r * wc.r);
    measure_row("length", wc.script_L, 2.0 * wc.ell + 2.0 * kPi * wc.r);
    exact_row("parts_split", wc.M, wc.M_prime + wc.M_b1 + wc.M_b2);
    exact_row("boundary_hits", wc.M_b, wc.M_b1 + 2 * wc.M_b2);
  }
  exact_row("edge_ends", wc.n_edge_ends, wc.sum_kn());
  exact_row("visits", wc.script_E, 4 * wc.M - wc.sum_kn());
  exact_row("corners", wc.script_C, wc.script_E - wc.pi_events());
  exact_row("vertices", wc.script_V, wc.script_E + wc.n_at(0));
  exact_row("sides", wc.script_S, wc.script_C);
  exact_row("euler", wc.script_X, wc.M - wc.sum_n() + (wc.block_mode ? 0 : 1));
  return rep;
}

EstimatorReport estimate(const WindowCounts& wc) {
  const long long sn = wc.sum_n();
  if (sn == 0 || wc.N == 0 || wc.M == 0) {
    throw Error(ErrorCode::EmptyWindow, "window holds no vertex, cell, or edge-part");
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EstimatorReport er;
  er.r = wc.r;
  er.alpha = wc.ell / wc.area;
  er.lambda_verts = static_cast<double>(sn) / wc.area;
  for (const auto& [k, v] : wc.n_verts) er.lambda_verts_k[k] = v / wc.area;
  for (const auto& [k, v] : wc.n_pi_verts) er.lambda_pi_verts_k[k] = v / wc.area;
  er.lambda_edges = static_cast<double>(wc.n_edges) / wc.area;
  er.lambda_cells = static_cast<double>(wc.n_cells) / wc.area;
  er.theta = static_cast<double>(wc.sum_kn()) / sn;
  er.phi = static_cast<double>(wc.pi_events()) / sn;
  er.xi = static_cast<double>(wc.n_at(0)) / sn;
  er.nu = wc.ell / wc.M;
  er.mu_A = wc.script_A / wc.N;
  er.mu_L = wc.script_L / wc.N;
  er.mu_chi = static_cast<double>(wc.script_X) / wc.N;
  er.mu_V = static_cast<double>(wc.script_V) / wc.N;
  er.mu_E = static_cast<double>(wc.script_E) / wc.N;
  er.mu_S = static_cast<double>(wc.script_S) / wc.N;

  const long long n2 = wc.n_at(2);
  const long long d = sn - n2;
  if (d > 0) {
    er.theta_star = static_cast<double>(wc.sum_kn() - 2 * n2) / d;
    er.xi_star = static_cast<double>(wc.n_at(0)) / d;
    er.phi_star = static_cast<double>(wc.pi_events() - 2 * wc.n_pi_at(2)) / d;
    er.mu_V_star = static_cast<double>(wc.script_V - 2 * n2) / wc.N;
    er.mu_C_star = static_cast<double>(wc.script_C + 2 * wc.n_pi_at(2) - 2 * n2) / wc.N;
  } else {
    er.theta_star = er.xi_star = er.phi_star = er.mu_V_star = er.mu_C_star = nan;
  }
  er.recip_area = nan;
  return er;
}

ResidualReport validate_formulas(const EstimatorReport& er, const WindowCounts& wc) {
  ResidualReport out;
  out.theta2_gap = std::numeric_limits<double>::quiet_NaN();

  const long long sn = wc.sum_n();
  const long long skn = wc.sum_kn();
  const long long n0 = wc.n_at(0);
  const long long n2 = wc.n_at(2);
  const long long npi2 = wc.n_pi_at(2);
  const long long pik3 = wc.pi_events() - 2 * npi2;
  const long long N = wc.N;

  const bool theta_two = skn == 2 * sn || std::abs(er.theta - 2.0) < kThetaTwoBand;
  const long long dstar = sn - n2;
  const bool star_two =
      dstar <= 0 || skn - 2 * n2 == 2 * dstar ||
      std::abs(er.theta_star - 2.0) < kThetaTwoBand || std::isnan(er.theta_star);

  auto rat_rel = [&](const Rat& lhs, const Rat& rhs) {
    if ((lhs - rhs).is_zero()) return 0.0;
    return rel_gap(lhs.to_double(), rhs.to_double());
  };

  out.exact = true;
  try {
    const Rat th(skn, sn);
    const Rat mx(wc.script_X, N);
    const Rat two(2);
    if (theta_two) {
      out.skipped.insert({"eq29", "eq30", "eq31"});
      out.theta2_gap = std::abs(er.mu_chi);
    } else {
      const Rat ph(wc.pi_events(), sn);
      const Rat xi(n0, sn);
      const Rat denom = th - two;
      out.residuals["eq29"] = rat_rel(Rat(wc.script_E, N), two * th * mx / denom);
      out.residuals["eq30"] = rat_rel(Rat(wc.script_S, N), two * (th - ph) * mx / denom);
      out.residuals["eq31"] = rat_rel(Rat(wc.script_V, N), two * (th + xi) * mx / denom);
    }
    if (star_two) {
      out.skipped.insert({"eq35", "muCstar"});
      if (std::isnan(out.theta2_gap)) out.theta2_gap = std::abs(er.mu_chi);
    } else {
      const Rat ths(skn - 2 * n2, dstar);
      const Rat phs(pik3, dstar);
      const Rat xis(n0, dstar);
      const Rat denom = ths - two;
      out.residuals["eq35"] =
          rat_rel(Rat(wc.script_V - 2 * n2, N), two * (ths + xis) * mx / denom);
      out.residuals["muCstar"] = rat_rel(Rat(wc.script_C + 2 * npi2 - 2 * n2, N),
                                         two * (ths - phs) * mx / denom);
    }
    out.residuals["sec9"] = rat_rel(Rat(2 * wc.n_edges), Rat(skn));
    out.residuals["sec13"] =
        rat_rel(Rat(wc.n_edges), Rat(wc.n_cells) * mx + Rat(sn));
  } catch (const std::overflow_error&) {
    out.exact = false;
  } catch (const std::domain_error&) {
    out.exact = false;
  }
  if (!out.exact) {
    out.residuals.clear();
    if (!theta_two) {
      const double denom = er.theta - 2.0;
      out.residuals["eq29"] = rel_gap(er.mu_E, 2.0 * er.theta * er.mu_chi / denom);
      out.residuals["eq30"] =
          rel_gap(er.mu_S, 2.0 * (er.theta - er.phi) * er.mu_chi / denom);
      out.residuals["eq31"] =
          rel_gap(er.mu_V, 2.0 * (er.theta + er.xi) * er.mu_chi / denom);
    }
    if (!star_two) {
      const double denom = er.theta_star - 2.0;
      out.residuals["eq35"] = rel_gap(
          er.mu_V_star, 2.0 * (er.theta_star + er.xi_star) * er.mu_chi / denom);
      out.residuals["muCstar"] = rel_gap(
          er.mu_C_star, 2.0 * (er.theta_star - er.phi_star) * er.mu_chi / denom);
    }
    out.residuals["sec9"] = rel_gap(2.0 * er.lambda_edges, er.lambda_verts * er.theta);
    out.residuals["sec13"] = rel_gap(
        er.lambda_edges, er.lambda_cells * er.mu_chi + er.lambda_verts);
  }
  out.residuals["eq18"] = rel_gap(er.lambda_edges, er.alpha / er.nu);
  if (!std::isnan(er.recip_area)) {
    out.residuals["eq26"] = std::abs(er.mu_A * er.recip_area - 1.0);
  }
  return out;
}

double reciprocal_area_estimate(const FaceSet& fs, const Window& w, int samples,
                                std::uint64_t seed) {
  if (samples <= 0) throw Error(ErrorCode::ConfigError, "sample count must be positive");
  const FaceLocator loc(fs);
  Rng rng(seed);
  double acc = 0.0;
  int got = 0;
  long long attempts = 0;
  const long long cap = 100LL * samples + 1000;
  while (got < samples) {
    if (++attempts > cap) {
      throw Error(ErrorCode::AmbiguousContainment,
                  "reciprocal area sampling cannot find interior points");
    }
    const double rad = w.radius * std::sqrt(rng.uniform());
    const double ang = 2.0 * kPi * rng.uniform();
    const Point2 p{w.center.x + rad * std::cos(ang), w.center.y + rad * std::sin(ang)};
    const int f = loc.locate(p);
    if (f < 0 || f == fs.sink) continue;
    const double a = fs.faces[f].area;
    if (!(a > 0.0)) continue;
    acc += 1.0 / a;
    ++got;
  }
  return acc / samples;
}

double reciprocal_area_estimate_block(const FaceSet& fs, Point2 origin, double bw,
                                      double bh, int samples, std::uint64_t seed) {
  if (samples <= 0) throw Error(ErrorCode::ConfigError, "sample count must be positive");
  const FaceLocator loc(fs);
  Rng rng(seed);
  double acc = 0.0;
  int got = 0;
  long long attempts = 0;
  const long long cap = 100LL * samples + 1000;
  while (got < samples) {
    if (++attempts > cap) {
      throw Error(ErrorCode::AmbiguousContainment,
                  "reciprocal area sampling cannot find interior points");
    }
    const Point2 p{origin.x + bw * rng.uniform(), origin.y + bh * rng.uniform()};
    const int f = loc.locate(p);
    if (f < 0 || f == fs.sink) continue;
    const double a = fs.faces[f].area;
    if (!(a > 0.0)) continue;
    acc += 1.0 / a;
    ++got;
  }
  return acc / samples;
}

UnionStats cell_union_stats(const FaceSet& fs, const std::map<int, int>& group_of_face) {
  UnionStats us;
  std::map<int, int> dense;
  for (const auto& [f, gid] : group_of_face) {
    if (f < 0 || f >= static_cast<int>(fs.faces.size()) || f == fs.sink) {
      throw Error(ErrorCode::ConfigError, "union grouping names a nonexistent face");
    }
    dense.try_emplace(gid, static_cast<int>(dense.size()));
  }
  us.group_count = static_cast<int>(dense.size());
  if (us.group_count == 0) return us;
  us.chi.assign(us.group_count, 0);
  us.edge_visits.assign(us.group_count, 0);
  us.sides.assign(us.group_count, 0);
  us.area.assign(us.group_count, 0.0);
  us.perimeter.assign(us.group_count, 0.0);
  for (const auto& [f, gid] : group_of_face) {
    const Face& face = fs.faces[f];
    const int gi = dense[gid];
    us.chi[gi] += face.chi;
    us.edge_visits[gi] += face.edge_visits;
    us.sides[gi] += face.corner_count;
    us.area[gi] += face.area;
    us.perimeter[gi] += face.perimeter;
  }
  for (int gi = 0; gi < us.group_count; ++gi) {
    us.bold_mu_chi += us.chi[gi];
    us.bold_mu_E += us.edge_visits[gi];
    us.bold_mu_S += us.sides[gi];
    us.bold_mu_A += us.area[gi];
    us.bold_mu_L += us.perimeter[gi];
  }
  us.bold_mu_chi /= us.group_count;
  us.bold_mu_E /= us.group_count;
  us.bold_mu_S /= us.group_count;
  us.bold_mu_A /= us.group_count;
  us.bold_mu_L /= us.group_count;
  return us;
}

double subwindow_mean_check(const GeometricGraph& g, const Window& w,
                            const EstimatorReport& er, double y, int centers,
                            std::uint64_t seed) {
  if (!(y > 0.0) || y >= w.radius) {
    throw Error(ErrorCode::ConfigError, "sub-window radius must lie inside the window");
  }
  if (centers <= 0) throw Error(ErrorCode::ConfigError, "need at least one centre");
  Rng rng(seed);
  double total = 0.0;
  for (int t = 0; t < centers; ++t) {
    const double rad = (w.radius - y) * std::sqrt(rng.uniform());
    const double ang = 2.0 * kPi * rng.uniform();
    const Point2 c{w.center.x + rad * std::cos(ang), w.center.y + rad * std::sin(ang)};
    long long count = 0;
    for (const auto& [a, b] : g.links) {
      if (point_segment_dist(c, g.nodes[a], g.nodes[b]) <= y) ++count;
    }
    total += static_cast<double>(count);
  }
  const double mean = total / centers;
  double skl = 0.0;
  for (const auto& [k, lam] : er.lambda_verts_k) skl += k * lam;
  const double predicted = 2.0 * y * er.alpha + 0.5 * kPi * y * y * skl;
  if (!(predicted > 0.0)) {
    throw Error(ErrorCode::EmptyWindow, "predicted sub-window mean vanishes");
  }
  return std::abs(mean - predicted) / predicted;
}

}  // namespace tess

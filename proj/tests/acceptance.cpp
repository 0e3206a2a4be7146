// Release gates.  Each gate prints one PASS/FAIL line with its wall time;
// the process exits nonzero if any gate fails its checks or its budget.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "graph_corpus.hpp"
#include "raster_oracle.hpp"
#include "tess/experiment.hpp"
#include "tess/faces.hpp"
#include "tess/generators.hpp"
#include "tess/window_stats.hpp"

using namespace tess;

namespace {

// Gate tolerances, fixed here on purpose.
constexpr double kMuChiLo = 0.98;
constexpr double kMuChiHi = 1.02;
constexpr double kMeanValencyTol = 0.05;     // around the crossing value 4
constexpr double kLineIntensityTol = 0.05;   // around the nominal 1
constexpr double kIntensityRelationTol = 0.02;
constexpr double kReciprocalTol = 0.05;
constexpr int kReciprocalSamples = 160000;
constexpr double kResidualGate = 0.03;
constexpr double kSubwindowGate = 0.05;
constexpr int kSubwindowCenters = 2000;
constexpr double kSubwindowY = 1.0;
constexpr long long kMinVertices = 10000;
constexpr int kCorpusSeeds = 50;
constexpr int kSmallGraphs = 200;
constexpr int kJobs = 8;

int g_failed = 0;

struct CorpusItem {
  std::string tag;
  GeometricGraph g;
  FaceSet fs;        // faces of the unclipped graph
  IdentityReport ids;  // windowed census identities (generators only)
  bool has_ids = false;
};

struct FixtureBlock {
  std::string tag;
  int corpus_index = -1;
  Point2 origin{};
  double w = 0.0;
  double h = 0.0;
};

std::vector<CorpusItem> g_corpus;
std::vector<FixtureBlock> g_fixture_blocks;
std::vector<std::pair<GeometricGraph, FaceSet>> g_small;

void gate(const char* label, double budget_s,
          const std::function<bool(std::string&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string why;
  bool ok = false;
  try {
    ok = body(why);
  } catch (const std::exception& e) {
    ok = false;
    why = std::string("threw: ") + e.what();
  }
  const double s = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  const bool in_budget = s <= budget_s;
  const bool pass = ok && in_budget;
  std::printf("%s  %-52s %6.1fs  (budget %.0fs)\n", pass ? "PASS" : "FAIL",
              label, s, budget_s);
  if (!pass) {
    ++g_failed;
    if (!ok && !why.empty()) std::printf("      %s\n", why.c_str());
    if (!in_budget) std::printf("      over budget\n");
  }
}

long long bounded_chi_total(const FaceSet& fs) {
  long long total = 0;
  for (int f = 0; f < (int)fs.faces.size(); ++f) {
    if (f != fs.sink) total += fs.faces[f].chi;
  }
  return total;
}

bool entry_pass(const IdentityReport& ids, const char* name, std::string& why) {
  for (const auto& e : ids.entries) {
    if (e.name == name) {
      if (!e.pass) {
        why = std::string(name) + " row " + std::to_string(e.lhs) +
              " != " + std::to_string(e.rhs);
      }
      return e.pass;
    }
  }
  why = std::string("missing identity row ") + name;
  return false;
}

GeometricGraph corpus_graph(int model, std::uint64_t seed) {
  const Window w8{{0.0, 0.0}, 8.0};
  switch (model) {
    case 0:
      return poisson_lines(1.0, w8, 5.0, seed);
    case 1:
      return delete_edge_interiors(poisson_lines(1.0, w8, 5.0, seed + 10000),
                                   0.3, seed);
    default:
      return falling_leaves(LeafConfig{}, {{0.0, 0.0}, 5.0}, seed);
  }
}

double corpus_radius(int model) { return model == 2 ? 5.0 : 8.0; }

// Gate 1: the alternating vertex/edge/cell count.  On a bare finite graph it
// closes against the number of outermost components; when one hull encloses
// everything that number is one.  Random outputs are checked through their
// disc windows, where the boundary circle supplies the hull.
bool gate_euler(std::string& why) {
  bool ok = true;

  const auto add_fixture = [&](GeometricGraph g, const char* tag, Point2 origin,
                               double bw, double bh, bool one_hull) {
    FaceSet fs = extract_faces(embed(g));
    const long long n = (long long)g.nodes.size();
    const long long l = (long long)g.links.size();
    const Face& sink = fs.faces[fs.sink];
    const long long outermost =
        (long long)sink.holes.size() + (long long)sink.isolated.size();
    if (n - l + bounded_chi_total(fs) != outermost ||
        (one_hull && outermost != 1)) {
      ok = false;
      if (why.empty()) why = std::string(tag) + ": bare count does not close";
    }
    g_fixture_blocks.push_back(
        {tag, (int)g_corpus.size(), origin, bw, bh});
    g_corpus.push_back({tag, std::move(g), std::move(fs), {}, false});
  };

  // Every honeycomb decoration is enclosed by its own cell, so those patches
  // have a single hull.  The six orbit patch leaves the free pieces of its
  // outermost belt in the open, so only the general closure applies.
  const auto hp = hexagon_fixture(HexVariant::PointHole, 3, {0.0, 0.0});
  add_fixture(hp.graph, "hexagon point", hp.block_origin, hp.block_w, hp.block_h,
              true);
  const auto hs = hexagon_fixture(HexVariant::SegmentHole, 3, {0.0, 0.0});
  add_fixture(hs.graph, "hexagon segment", hs.block_origin, hs.block_w,
              hs.block_h, true);
  const auto fx = fig4a_fixture(3, {0.0, 0.0});
  add_fixture(fx.graph, "six orbit block", fx.block_origin, fx.block_w,
              fx.block_h, false);

  static const char* kModelTag[] = {"lines", "thinned", "leaves"};
  for (std::uint64_t seed = 1; seed <= kCorpusSeeds; ++seed) {
    for (int model = 0; model < 3; ++model) {
      CorpusItem item;
      item.tag = std::string(kModelTag[model]) + " seed " + std::to_string(seed);
      item.g = corpus_graph(model, seed);
      item.fs = extract_faces(embed(item.g));
      const auto refs = face_reference_points(item.fs);
      const auto wa = analyze_window(item.g, item.fs, refs,
                                     {{0.0, 0.0}, corpus_radius(model)});
      item.ids = check_identities(wa.counts);
      item.has_ids = true;
      std::string row_why;
      if (!entry_pass(item.ids, "euler", row_why)) {
        ok = false;
        if (why.empty()) why = item.tag + ": " + row_why;
      }
      g_corpus.push_back(std::move(item));
    }
  }
  return ok;
}

// Gate 2: every census conservation row, with the area and length rows held
// to a relative 1e-6, over the same corpus plus the fixture blocks.
bool gate_identities(std::string& why) {
  bool ok = true;
  for (const auto& item : g_corpus) {
    if (!item.has_ids) continue;
    std::string row_why;
    if (!(item.ids.all_pass && entry_pass(item.ids, "area", row_why) &&
          entry_pass(item.ids, "length", row_why))) {
      ok = false;
      if (why.empty()) why = item.tag + ": " + row_why;
    }
  }
  for (const auto& fb : g_fixture_blocks) {
    const CorpusItem& item = g_corpus[(std::size_t)fb.corpus_index];
    const auto refs = face_reference_points(item.fs);
    const auto wa =
        analyze_block(item.g, item.fs, refs, fb.origin, fb.w, fb.h);
    if (!check_identities(wa.counts).all_pass) {
      ok = false;
      if (why.empty()) why = fb.tag + ": block identities";
    }
  }
  return ok;
}

// Gate 3: the hand-counted six-orbit block census, exact to the last digit.
bool gate_block_census(std::string& why) {
  const auto fx = fig4a_fixture(3, {0.0, 0.0});
  const FaceSet raw = extract_faces(embed(fx.graph));
  const auto refs = face_reference_points(raw);
  const auto wa = analyze_block(fx.graph, raw, refs, fx.block_origin,
                                fx.block_w, fx.block_h);
  const WindowCounts& c = wa.counts;

  bool ok = true;
  const auto want = [&](bool cond, const char* what) {
    if (!cond) {
      ok = false;
      if (why.empty()) why = what;
    }
  };
  want(c.sum_n() == 18, "vertex count");
  want(c.sum_kn() == 42, "valency total");
  want(c.n_at(2) == 12, "two valent count");
  want(c.pi_events() == 3, "straight gap count");
  want(c.n_edges == 21, "edge count");
  want(c.n_cells == 6, "cell count");
  want(c.script_E == 42, "edge visit total");
  want(c.script_S == 39, "side total");
  want(c.script_V == 42, "corner total");
  want(c.script_X == 3, "euler total");
  want(c.script_A == 2.0, "area total");

  const auto er = estimate(c);
  want(er.theta == 42.0 / 18.0, "mean valency");
  want(er.phi == 3.0 / 18.0, "straight vertex share");
  want(er.mu_E == 7.0, "mean edge visits");
  want(er.mu_S == 6.5, "mean sides");
  want(er.mu_chi == 0.5, "mean euler");
  want(er.theta_star == 3.0, "reduced mean valency");
  want(er.phi_star == 0.5, "reduced straight share");
  want(er.mu_V_star == 3.0, "reduced mean corners");
  want(er.mu_C_star == 2.5, "reduced mean sides");

  const auto res = validate_formulas(er, c);
  want(res.exact, "rational evaluation");
  want(res.skipped.empty(), "no relation skipped");
  for (const char* k : {"eq29", "eq30", "eq31", "eq35", "muCstar"}) {
    const auto it = res.residuals.find(k);
    want(it != res.residuals.end() && it->second == 0.0, k);
  }

  // One cell per orbit, as (sides, edge visits, euler number).
  const FaceLocator loc(raw);
  std::vector<std::array<int, 3>> cells;
  for (const Point2& p : fx.anchors) {
    const int f = loc.locate(p);
    want(f >= 0 && f != raw.sink, "anchor outside every cell");
    if (f < 0) continue;
    const Face& face = raw.faces[f];
    cells.push_back({face.corner_count, face.edge_visits, face.chi});
  }
  std::sort(cells.begin(), cells.end());
  const std::vector<std::array<int, 3>> expected{
      {3, 3, 1}, {3, 3, 1}, {4, 4, 1}, {8, 8, 1}, {10, 11, -1}, {11, 13, 0}};
  want(cells == expected, "per cell census");
  return ok;
}

// Gate 4: cells merged into unions keep the mean relations, under two
// different groupings of the same patch.
bool gate_unions(std::string& why) {
  const auto fx = fig4a_fixture(3, {0.0, 0.0});
  const FaceSet raw = extract_faces(embed(fx.graph));
  const FaceLocator loc(raw);

  std::map<int, int> group_a, group_b;
  for (std::size_t i = 0; i < fx.anchors.size(); ++i) {
    const int f = loc.locate(fx.anchors[i]);
    if (f < 0) {
      why = "anchor fell outside every cell";
      return false;
    }
    group_a[f] = fx.grouping_a[i];
    group_b[f] = raw.faces[f].chi;
  }

  const UnionStats a = cell_union_stats(raw, group_a);
  const UnionStats b = cell_union_stats(raw, group_b);

  bool ok = true;
  const auto want = [&](bool cond, const char* what) {
    if (!cond) {
      ok = false;
      if (why.empty()) why = what;
    }
  };
  want(a.group_count == 4, "four unions");
  want(a.bold_mu_E == 10.5, "union mean edge visits");
  want(a.bold_mu_S == 9.75, "union mean sides");
  want(a.bold_mu_chi == 0.75, "union mean euler");
  want(b.group_count == 3, "three unions");
  want(b.bold_mu_E == 14.0, "regrouped mean edge visits");
  want(b.bold_mu_S == 13.0, "regrouped mean sides");
  want(b.bold_mu_chi == 1.0, "regrouped mean euler");
  for (const UnionStats* us : {&a, &b}) {
    want(us->bold_mu_E == 14.0 * us->bold_mu_chi, "edge visit relation");
    want(us->bold_mu_S == 13.0 * us->bold_mu_chi, "side relation");
  }
  return ok;
}

// Gate 5: the honeycomb patches sit exactly on the degenerate ray where the
// per-cell relations lose their denominator and must be withheld.
bool gate_degenerate_ray(std::string& why) {
  bool ok = true;
  const auto want = [&](bool cond, const char* what) {
    if (!cond) {
      ok = false;
      if (why.empty()) why = what;
    }
  };
  for (HexVariant v : {HexVariant::PointHole, HexVariant::SegmentHole}) {
    const auto fx = hexagon_fixture(v, 3, {0.0, 0.0});
    const FaceSet raw = extract_faces(embed(fx.graph));
    const auto refs = face_reference_points(raw);
    const auto wa = analyze_block(fx.graph, raw, refs, fx.block_origin,
                                  fx.block_w, fx.block_h);
    want(check_identities(wa.counts).all_pass, "block identities");
    const auto er = estimate(wa.counts);
    want(er.theta == 2.0, "mean valency two");
    want(er.mu_chi == 0.0, "mean euler zero");
    const auto res = validate_formulas(er, wa.counts);
    want(res.skipped.count("eq29") == 1, "relation withheld");
    want(res.theta2_gap == 0.0, "withhold gap zero");
  }
  return ok;
}

// Gate 6: replicated line-process runs reproduce the known constants.
bool gate_line_process(std::string& why) {
  ModelConfig cfg;
  cfg.model = "poisson_deleted";
  cfg.seed = 1;
  cfg.r = 30.0;
  cfg.intensity = 1.0;
  cfg.q = 0.0;
  cfg.margin = 5.0;
  RunFlags fl;
  fl.recip = true;
  fl.recip_samples = kReciprocalSamples;
  const auto runs = run_replications(cfg, fl, 20, kJobs);

  bool ok = true;
  const auto want = [&](bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (why.empty()) why = what;
    }
  };
  for (const auto& rr : runs) {
    want(rr.ok, "seed " + std::to_string(rr.seed) + " failed: " + rr.error);
    if (!rr.ok) continue;
    want(rr.ids.all_pass, "identities");
    want(rr.counts.sum_kn() == 4 * rr.counts.sum_n(), "all crossings");
    want(rr.est.theta == 4.0, "mean valency four");
  }
  const Aggregate agg = aggregate_runs(runs);
  const double mu_chi = agg.mean.at("mu_chi");
  const double mu_e = agg.mean.at("mu_E");
  const double alpha = agg.mean.at("alpha");
  const double le = agg.mean.at("lambda_edges");
  const double lc = agg.mean.at("lambda_cells");
  const double lv = agg.mean.at("lambda_verts");
  want(mu_chi >= kMuChiLo && mu_chi <= kMuChiHi, "mean euler near one");
  want(std::abs(mu_e - 4.0) <= kMeanValencyTol, "mean edge visits near four");
  want(std::abs(alpha - 1.0) <= kLineIntensityTol, "length intensity near one");
  want(std::abs(le - (lc * mu_chi + lv)) <= kIntensityRelationTol * le,
       "intensity relation");
  want(agg.residual_mean.at("eq26") <= kReciprocalTol,
       "reciprocal area inversion");
  return ok;
}

// Gate 7: a thinned run large enough that every estimated relation settles
// within a few percent, including an independent sub-window recount.
bool gate_thinned_at_scale(std::string& why) {
  ModelConfig cfg;
  cfg.model = "poisson_deleted";
  cfg.seed = 1;
  cfg.r = 115.0;
  cfg.intensity = 1.0;
  cfg.q = 0.3;
  cfg.margin = 10.0;
  RunFlags fl;
  fl.subwindow = true;
  fl.subwindow_y = kSubwindowY;
  fl.subwindow_centers = kSubwindowCenters;
  const auto runs = run_replications(cfg, fl, 20, kJobs);

  bool ok = true;
  const auto want = [&](bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (why.empty()) why = what;
    }
  };
  long long min_verts = -1;
  for (const auto& rr : runs) {
    want(rr.ok, "seed " + std::to_string(rr.seed) + " failed: " + rr.error);
    if (!rr.ok) continue;
    want(rr.ids.all_pass, "identities");
    const long long v = rr.counts.sum_n();
    min_verts = min_verts < 0 ? v : std::min(min_verts, v);
  }
  want(min_verts >= kMinVertices,
       "smallest run has " + std::to_string(min_verts) + " vertices");
  const Aggregate agg = aggregate_runs(runs);
  for (const char* k : {"eq29", "eq30", "eq31", "eq35", "muCstar"}) {
    const auto it = agg.residual_mean.find(k);
    want(it != agg.residual_mean.end() && it->second < kResidualGate,
         std::string("mean residual ") + k);
  }
  want(agg.mean.at("subwindow_dev") <= kSubwindowGate, "sub-window recount");
  return ok;
}

// Gate 8: the face walk against a pixel flood fill that shares no code with
// it: region count, per-region hole count, and euler number all match.
bool gate_raster(std::string& why) {
  bool ok = true;
  for (std::uint64_t seed = 1; seed <= kSmallGraphs; ++seed) {
    GeometricGraph g = testing::random_small_graph(seed);
    FaceSet fs = extract_faces(embed(g));
    const auto raster = testing::rasterize_regions(g);
    const std::string tag = "graph " + std::to_string(seed);
    if ((int)raster.regions.size() != fs.bounded_face_count()) {
      ok = false;
      if (why.empty()) why = tag + ": region count";
    } else {
      const FaceLocator loc(fs);
      std::map<int, int> hits;
      for (const auto& reg : raster.regions) {
        const int f = loc.locate(reg.probe);
        if (f < 0 || f == fs.sink) {
          ok = false;
          if (why.empty()) why = tag + ": probe missed";
          continue;
        }
        ++hits[f];
        const Face& face = fs.faces[f];
        if (reg.holes != (int)face.holes.size() + (int)face.isolated.size() ||
            reg.euler != face.chi) {
          ok = false;
          if (why.empty()) why = tag + ": hole or euler mismatch";
        }
      }
      for (const auto& [f, n] : hits) {
        if (n != 1) {
          ok = false;
          if (why.empty()) why = tag + ": probe collision";
        }
      }
    }
    g_small.emplace_back(std::move(g), std::move(fs));
  }
  return ok;
}

// Gate 9: the turning-angle and the side-membership definitions of a
// straight-gap vertex agree on every graph touched above.
bool gate_straight_vertices(std::string& why) {
  bool ok = true;
  for (const auto& item : g_corpus) {
    try {
      side_membership_pi_check(item.fs, item.g);
    } catch (const std::exception& e) {
      ok = false;
      if (why.empty()) why = item.tag + ": " + e.what();
    }
  }
  for (const auto& [g, fs] : g_small) {
    try {
      side_membership_pi_check(fs, g);
    } catch (const std::exception& e) {
      ok = false;
      if (why.empty()) why = std::string("small graph: ") + e.what();
    }
  }
  return ok;
}

}  // namespace

int main() {
  gate("alternating count closes on every tessellation", 30.0, gate_euler);
  gate("window census rows balance exactly", 60.0, gate_identities);
  gate("six orbit block matches its hand count", 1.0, gate_block_census);
  gate("cell unions keep the mean relations", 1.0, gate_unions);
  gate("honeycombs sit on the degenerate ray", 1.0, gate_degenerate_ray);
  gate("line process replication matches theory", 300.0, gate_line_process);
  gate("thinned process settles at scale", 600.0, gate_thinned_at_scale);
  gate("face walk agrees with a raster flood fill", 120.0, gate_raster);
  gate("straight vertex definitions coincide", 60.0, gate_straight_vertices);

  std::printf("%d of 9 gates passed\n", 9 - g_failed);
  return g_failed == 0 ? 0 : 1;
}

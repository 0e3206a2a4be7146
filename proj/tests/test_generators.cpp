#include <doctest.h>

#include <cmath>
#include <string>

#include "tess/error.hpp"
#include "tess/faces.hpp"
#include "tess/generators.hpp"
#include "tess/json_io.hpp"
#include "tess/window_stats.hpp"

using namespace tess;

namespace {

EstimatorReport disc_estimate(const GeometricGraph& g, double r) {
  const FaceSet raw = extract_faces(embed(g));
  const auto refs = face_reference_points(raw);
  const auto wa = analyze_window(g, raw, refs, {{0, 0}, r});
  return estimate(wa.counts);
}

}  // namespace

TEST_CASE("line process is seed deterministic") {
  const auto a = poisson_lines(1.0, {{0, 0}, 8.0}, 5.0, 17);
  const auto b = poisson_lines(1.0, {{0, 0}, 8.0}, 5.0, 17);
  CHECK(graph_to_json(a).dump() == graph_to_json(b).dump());
  const auto c = poisson_lines(1.0, {{0, 0}, 8.0}, 5.0, 18);
  CHECK(graph_to_json(a).dump() != graph_to_json(c).dump());
}

TEST_CASE("line process length intensity is calibrated") {
  double alpha_sum = 0.0, lv_sum = 0.0;
  const int seeds = 20;
  for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
    const auto er = disc_estimate(poisson_lines(1.0, {{0, 0}, 10.0}, 5.0, seed), 10.0);
    alpha_sum += er.alpha;
    lv_sum += er.lambda_verts;
  }
  CHECK(alpha_sum / seeds == doctest::Approx(1.0).epsilon(0.05));
  // Crossing intensity of a unit-length-intensity isotropic line process.
  CHECK(lv_sum / seeds == doctest::Approx(1.0 / kPi).epsilon(0.10));
}

TEST_CASE("edge deletion is an independent thinning") {
  const auto g = poisson_lines(1.0, {{0, 0}, 21.0}, 5.0, 3);
  const long long before = (long long)g.links.size();
  REQUIRE(before > 800);

  const auto thinned = delete_edge_interiors(g, 0.5, 11);
  const long long kept = (long long)thinned.links.size();
  // Four sigma around the binomial mean.
  CHECK(std::abs(kept - before / 2.0) <= 2.0 * std::sqrt((double)before));
  // Thinning never drops a node.
  CHECK(thinned.nodes.size() == g.nodes.size());

  const auto all_gone = delete_edge_interiors(g, 1.0, 11);
  CHECK(all_gone.links.empty());
  CHECK(all_gone.nodes.size() == g.nodes.size());
  const auto untouched = delete_edge_interiors(g, 0.0, 11);
  CHECK(untouched.links.size() == g.links.size());
}

TEST_CASE("deletion scales the mean valency") {
  double theta_sum = 0.0;
  const int seeds = 5;
  for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
    const auto g0 = poisson_lines(1.0, {{0, 0}, 30.0}, 5.0, seed);
    const auto g = delete_edge_interiors(g0, 0.3, seed ^ 0xBEEF);
    theta_sum += disc_estimate(g, 30.0).theta;
  }
  // Each of the four half-edges at a crossing survives with probability 0.7.
  CHECK(theta_sum / seeds == doctest::Approx(4.0 * 0.7).epsilon(0.035));
}

TEST_CASE("falling leaves is seed deterministic") {
  const auto a = falling_leaves(LeafConfig{}, {{0, 0}, 4.0}, 5);
  const auto b = falling_leaves(LeafConfig{}, {{0, 0}, 4.0}, 5);
  CHECK(graph_to_json(a).dump() == graph_to_json(b).dump());
}

TEST_CASE("congruent axis aligned leaves tile simply") {
  LeafConfig cfg;
  cfg.w_min = cfg.w_max = 1.0;
  cfg.h_min = cfg.h_max = 0.6;
  cfg.isotropic = false;
  cfg.fixed_angle = 0.0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto g = falling_leaves(cfg, {{0, 0}, 4.0}, seed);
    const FaceSet raw = extract_faces(embed(g));
    const auto refs = face_reference_points(raw);
    const auto wa = analyze_window(g, raw, refs, {{0, 0}, 4.0});
    CHECK(check_identities(wa.counts).all_pass);
    // Equal rectangles cannot nest, so no visible cell acquires a hole.
    for (int f = 0; f < (int)wa.faces.faces.size(); ++f) {
      if (f == wa.faces.sink) continue;
      CHECK(wa.faces.faces[f].holes.empty());
      CHECK(wa.faces.faces[f].chi == 1);
    }
  }
}

TEST_CASE("leaf coverage gives up on a tiny budget") {
  LeafConfig cfg;
  cfg.budget = 3;
  CHECK_THROWS_AS(falling_leaves(cfg, {{0, 0}, 10.0}, 1), Error);
  try {
    falling_leaves(cfg, {{0, 0}, 10.0}, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CoverageTimeout);
  }
}

TEST_CASE("fixture patches validate their inputs") {
  CHECK_THROWS_AS(hexagon_fixture(HexVariant::PointHole, 1, {0, 0}), Error);
  CHECK_THROWS_AS(fig4a_fixture(0, {0, 0}), Error);
}

TEST_CASE("honeycomb decorations appear per cell") {
  const auto point = hexagon_fixture(HexVariant::PointHole, 2, {0, 0});
  CHECK(!point.graph.isolated_nodes.empty());
  const auto seg = hexagon_fixture(HexVariant::SegmentHole, 2, {0, 0});
  CHECK(seg.graph.isolated_nodes.empty());
  long long one_valent = 0;
  for (int i = 0; i < (int)seg.graph.nodes.size(); ++i) {
    if (seg.graph.valency(i) == 1) ++one_valent;
  }
  CHECK(one_valent > 0);
  CHECK(one_valent % 2 == 0);
}

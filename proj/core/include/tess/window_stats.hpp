#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tess/faces.hpp"
#include "tess/graph.hpp"
#include "tess/window.hpp"

namespace tess {

// Everything countable about one observation window.  Disc windows carry the
// crossing bookkeeping; rectangular blocks (for periodic inputs) reuse the
// same fields with the boundary rows zeroed and M equal to the edge count.
struct WindowCounts {
  bool block_mode = false;
  Point2 center{};
  double r = 0.0;
  Point2 block_origin{};
  double block_w = 0.0;
  double block_h = 0.0;
  double area = 0.0;  // pi r^2, or block_w * block_h

  std::map<int, long long> n_verts;     // valency -> interior vertex count
  std::map<int, long long> n_pi_verts;  // valency -> straight-gap vertices
  long long n_edges = 0;                // midpoint inside
  long long n_edge_ends = 0;            // endpoints at interior vertices
  long long n_cells = 0;                // reference point inside
  double ell = 0.0;                     // edge length inside

  long long M = 0;        // edge-parts meeting the window
  long long M_prime = 0;  // edges wholly inside
  long long M_b = 0;      // circle crossing events
  long long M_b1 = 0;     // edges crossing once
  long long M_b2 = 0;     // edges crossing twice
  long long N = 0;        // bounded faces of the windowed graph
  long long N_prime = 0;  // those not touching the circle

  double script_A = 0.0;
  double script_L = 0.0;
  long long script_V = 0;
  long long script_E = 0;
  long long script_S = 0;
  long long script_C = 0;
  long long script_X = 0;

  long long sum_n() const;
  long long sum_kn() const;
  long long n_at(int k) const;
  long long n_pi_at(int k) const;
  long long pi_events() const;  // 2 * n_pi_verts[2] + sum over k>=3
};

struct WindowAnalysis {
  WindowCounts counts;
  FaceSet faces;  // windowed graph's faces; unused in block mode
};

// raw_faces / raw_refs come from the unclipped graph and provide the cell
// census.  Disc analysis clips, walks the windowed graph, and tallies.
WindowAnalysis analyze_window(const GeometricGraph& g, const FaceSet& raw_faces,
                              const std::vector<Point2>& raw_refs, const Window& w);

// Half-open block [x0, x0+w) x [y0, y0+h): the right census for periodic
// structures, where every orbit has exactly one representative per block.
WindowAnalysis analyze_block(const GeometricGraph& g, const FaceSet& raw_faces,
                             const std::vector<Point2>& raw_refs, Point2 origin,
                             double bw, double bh);

struct IdentityReport {
  struct Entry {
    std::string name;
    bool pass = false;
    double lhs = 0.0;
    double rhs = 0.0;
  };
  std::vector<Entry> entries;
  bool all_pass = true;
};

// Count-level conservation laws; integer rows must hold exactly, measure
// rows within kRelTol.
IdentityReport check_identities(const WindowCounts& wc);

struct EstimatorReport {
  double alpha = 0.0;
  double lambda_verts = 0.0;
  std::map<int, double> lambda_verts_k;
  std::map<int, double> lambda_pi_verts_k;
  double lambda_edges = 0.0;
  double lambda_cells = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  double xi = 0.0;
  double nu = 0.0;
  double mu_A = 0.0;
  double mu_L = 0.0;
  double mu_chi = 0.0;
  double mu_V = 0.0;
  double mu_E = 0.0;
  double mu_S = 0.0;
  double theta_star = 0.0;
  double xi_star = 0.0;
  double phi_star = 0.0;
  double mu_V_star = 0.0;
  double mu_C_star = 0.0;
  double recip_area = std::numeric_limits<double>::quiet_NaN();  // until sampled
  double r = 0.0;
  std::uint64_t seed = 0;
};

// Ratio estimators off the window counts.  Throws EmptyWindow when the
// window holds no vertex, no cell, or no edge-part.  Starred fields are NaN
// when every vertex is 2-valent.
EstimatorReport estimate(const WindowCounts& wc);

struct ResidualReport {
  std::map<std::string, double> residuals;  // relative deviations
  std::set<std::string> skipped;            // keys withheld near theta = 2
  double theta2_gap = std::numeric_limits<double>::quiet_NaN();  // |mu_chi| when skipping
  bool exact = false;       // rational arithmetic succeeded throughout
};

// Relative residuals of the mean-value relations.  Count-only relations are
// evaluated in exact rational arithmetic when the counts fit, so a relation
// that holds combinatorially reports exactly zero.
ResidualReport validate_formulas(const EstimatorReport& er, const WindowCounts& wc);

// Mean reciprocal area of the face under uniformly sampled points; points
// on the frame or outside every bounded face are resampled.
double reciprocal_area_estimate(const FaceSet& fs, const Window& w, int samples,
                                std::uint64_t seed);
double reciprocal_area_estimate_block(const FaceSet& fs, Point2 origin, double bw,
                                      double bh, int samples, std::uint64_t seed);

struct UnionStats {
  int group_count = 0;
  std::vector<long long> chi, edge_visits, sides;
  std::vector<double> area, perimeter;
  double bold_mu_chi = 0.0;
  double bold_mu_E = 0.0;
  double bold_mu_S = 0.0;
  double bold_mu_A = 0.0;
  double bold_mu_L = 0.0;
};

// Aggregates faces into disjoint unions (face id -> group id); faces absent
// from the map are left out.  Union characteristics add across members.
UnionStats cell_union_stats(const FaceSet& fs, const std::map<int, int>& group_of_face);

// Compares the mean edge-part count of small discs B_y centred uniformly in
// the shrunken window against 2*y*alpha + pi/2 * y^2 * sum(k * lambda_k).
// Returns the relative deviation.
double subwindow_mean_check(const GeometricGraph& g, const Window& w,
                            const EstimatorReport& er, double y, int centers,
                            std::uint64_t seed);

}  // namespace tess

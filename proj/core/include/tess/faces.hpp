#pragma once

#include <array>
#include <vector>

#include "tess/graph.hpp"

namespace tess {

// Directed edge of an embedded graph.  Segment hedges run straight between
// two nodes; arc hedges follow a circle anticlockwise (sweep > 0) or
// clockwise (sweep < 0) and may loop from a node back to itself, or around a
// whole boundary circle when sweep is +-2*pi.
struct HalfEdge {
  int from = -1;
  int to = -1;
  int twin = -1;
  int link = -1;              // originating link id; -1 for arcs
  double dep_angle = 0.0;     // direction of motion when leaving `from`
  double arr_angle = 0.0;     // direction of motion when reaching `to`
  double length = 0.0;
  double intrinsic_turn = 0.0;  // curvature contribution; equals sweep on arcs
  bool is_arc = false;
  Point2 center{};            // arc circle center
  double radius = 0.0;
  double a0 = 0.0;            // polar angle of the arc start about `center`
  double sweep = 0.0;         // signed swept angle
};

// Boundary circle carrying no node at all; it bounds faces on both sides.
struct FullCircle {
  Point2 center{};
  double radius = 0.0;
};

struct EmbeddedGraph {
  std::vector<Point2> nodes;
  std::vector<HalfEdge> hedges;
  std::vector<std::vector<int>> out;  // per node, hedge ids sorted by dep_angle
  std::vector<int> pos_in_out;        // hedge -> its index within out[from]
  std::vector<int> isolated;          // node ids with no hedge
  std::vector<FullCircle> circles;

  // Successor under the first-exit rule: among the exits at the head of `h`,
  // take the one making the largest anticlockwise turn from straight ahead;
  // the reversal scores the minimum.  Equivalently the rotational
  // predecessor of the twin.
  int first_exit(int h) const;

  void index();  // builds out / pos_in_out / isolated from nodes+hedges
};

// Lifts a segment graph into its embedding (two hedges per link).
EmbeddedGraph embed(const GeometricGraph& g);

struct CircuitVisit {
  int hedge = -1;     // hedge just walked
  double zeta = 0.0;  // turn taken at its head onto the next hedge
};

struct Circuit {
  std::vector<CircuitVisit> visits;  // canonical start: smallest hedge id
  double turning = 0.0;              // sum of turns plus intrinsic arc turns
  int orientation = 0;               // +1 anticlockwise, -1 clockwise
  int corner_count = 0;              // visits turning by more than kAngleTol
  double area = 0.0;                 // signed enclosed area
  double perimeter = 0.0;
  int circle = -1;                   // index into circles, for node-free loops
  bool has_arc = false;

  int node_visit_count() const {
    return circle >= 0 ? 0 : static_cast<int>(visits.size());
  }
};

// Walks every directed hedge exactly once; each circuit closes with turning
// +-2*pi.  Node-free circles add one circuit per orientation.
std::vector<Circuit> extract_circuits(const EmbeddedGraph& eg);

struct Face {
  int outer = -1;             // anticlockwise circuit id; -1 for the sink
  std::vector<int> holes;     // clockwise circuit ids
  std::vector<int> isolated;  // isolated node ids inside

  int edge_visits = 0;        // node visits summed over its circuits
  int corner_count = 0;       // corners summed over its circuits; side count
  int vertex_count = 0;       // edge_visits + isolated inside
  int chi = 0;                // 1 - holes - isolated (sink: -holes - isolated)
  double area = 0.0;
  double perimeter = 0.0;
  bool touches_circle = false;
};

struct FaceSet {
  EmbeddedGraph eg;
  std::vector<Circuit> circuits;
  std::vector<Face> faces;
  int sink = -1;  // index of the unbounded face within `faces`

  int bounded_face_count() const { return static_cast<int>(faces.size()) - 1; }
};

// Assigns every clockwise circuit as a hole of the innermost anticlockwise
// circuit strictly containing it (none: the unbounded sink), places isolated
// nodes the same way, and fills in per-face metrics.
FaceSet extract_faces(EmbeddedGraph eg);

// Winding number of a circuit about p (p off the circuit's point set).
double winding_number(const FaceSet& fs, int circuit, Point2 p);

// Midpoint (by arclength) of the longest side of the face, over all its
// circuits, hole sides included; ties pick the lexicographically smaller
// midpoint.  A side is a maximal run of hedges between corner visits.
Point2 face_reference_point(const FaceSet& fs, int face);

// For every node, the number of flat (zeta within kAngleTol of zero) visits
// over all circuits must equal the node's straight-gap count.
void side_membership_pi_check(const FaceSet& fs, const GeometricGraph& g);

// Point location with cached per-circuit boxes; cheap enough to call many
// thousands of times against one face set.
class FaceLocator {
 public:
  explicit FaceLocator(const FaceSet& fs);

  // Face whose interior holds p.  Returns -1 when p lies within kSnapTol of
  // the frame, in no bounded face, or where containment is ambiguous.
  int locate(Point2 p) const;

 private:
  const FaceSet* fs_;
  std::vector<int> plus_;                        // anticlockwise circuits
  std::vector<std::array<double, 4>> box_;       // xlo, ylo, xhi, yhi
  std::vector<int> face_of_;                     // circuit id -> face id
};

// Reference points for every bounded face, indexed by face id; the sink slot
// holds NaNs.
std::vector<Point2> face_reference_points(const FaceSet& fs);

}  // namespace tess

// Explicit sweepout families and their mass (relative perimeter) evaluators,
// plus a deterministic grid maximizer used to corroborate family bounds.
//
// Mass conventions: pieces are counted inside the open domain only, overlaps
// along the domain boundary contribute zero, and coinciding collinear
// segments cancel mod 2.
#pragma once

#include <functional>
#include <span>

#include "pwidths/geom.hpp"

namespace pwidths {

struct MonotoneSampleError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ChainMass {
  double mass = 0.0;
  std::vector<std::vector<Point2>> pieces;  // segments or sampled polylines
};

// Two-point boundary map on a triangle: the union of the chords that the
// boundary perpendiculars at p1 and p2 cut off, clipped at their crossing.
//   - p1, p2 on a common edge (vertices included): the empty chain
//   - exactly one of them a vertex: the full perpendicular chord through the
//     other point
//   - otherwise: the segments from each point to the crossing of the two
//     perpendiculars, clipped to the triangle
// Throws BoundaryPointError when a point is off the boundary.
ChainMass phi_mass(const ConvexPolygon& tri, Point2 p1, Point2 p2);

// Chord cut by a line; a line along an edge has zero relative mass.
ChainMass line_sweepout_mass(const ConvexPolygon& poly, const Line2& line);

// Zero set of a*x*y + b*x + c*y + d inside an axis-aligned square, as the
// relative boundary of {f < 0}. Nondegenerate members split into monotone
// branch arcs measured by adaptive quadrature; a == 0 members are chords, and
// the conic degenerates to two axis-parallel chords when b*c - a*d == 0.
ChainMass hyperbola_sweepout_mass(const ConvexPolygon& square,
                                  const std::array<double, 4>& coeffs);

struct MonotoneCheck {
  double polyline_length = 0.0;
  double bound = 0.0;  // (x_last - x_first) + |y_last - y_first|
  bool ok = false;
};

// Certifies the graph-length inequality on sampled points of a monotone
// graph: x must be nondecreasing and y one-directional, else
// MonotoneSampleError.
MonotoneCheck monotone_graph_bound_check(std::span<const Point2> samples);

// Perimeter of the plane cross-section. Planes containing a face are flagged
// through `contains_face` (the family being bounded excludes them).
double plane_sweepout_mass(const Tetrahedron& tet, const Plane3& plane,
                           bool* contains_face = nullptr);

// Mass of phi(x) + phi(y) for x = (x1,x2), y = (y1,y2) on the boundary, with
// collinear overlaps cancelling mod 2 (so pair_phi_mass(T,x,x) == 0).
ChainMass pair_phi_mass(const ConvexPolygon& tri, Point2 x1, Point2 x2, Point2 y1,
                        Point2 y2);

// Chart on the projective plane [a : b : c]: the upper hemisphere of S^2 with
// phi1 in [0, 2pi) and phi2 in [0, pi/2]. phi2 = 0 gives the line at
// infinity, reported as unset (false).
bool line_from_projective(double phi1, double phi2, Line2* out);

// Chart on projective 3-space [a : b : c : d]: the upper hemisphere of S^3
// with phi in [0, 2pi), theta in [0, pi], psi in [0, pi/2].
std::array<double, 4> projective4(double phi, double theta, double psi);

struct AxisSpec {
  double lo = 0.0;
  double hi = 1.0;
  bool periodic = false;  // periodic axes exclude hi; bounded axes include it
};

// A parametrized sweepout family with an analytic mass bound to corroborate.
struct Family {
  std::string name;
  int dim = 0;
  std::vector<AxisSpec> axes;
  std::function<double(const double*)> mass;  // -1 marks an excluded member
  double bound = 0.0;
  int default_grid = 64;
};

Family make_phi_family(const ConvexPolygon& tri);
Family make_pair_phi_family(const ConvexPolygon& tri);
Family make_line_family(const ConvexPolygon& poly, double bound);
Family make_hyperbola_family(const ConvexPolygon& square);
Family make_plane_family(const Tetrahedron& tet);

struct GridSpec {
  int grid = 0;  // coarse points per dimension; 0 selects the family default
  int refine_rounds = 40;
  int top_k = 4;
  int refine_points = 9;  // per dimension per round
  double shrink = 0.5;
};

struct MaximizerReport {
  std::string family;
  double best = 0.0;
  std::vector<double> argmax;
  double bound = 0.0;
  int grid = 0;
  int refine_rounds = 0;
  long long samples = 0;
};

// Deterministic coarse grid plus shrinking-window refinement around the
// top_k coarse cells. Ties resolve to the earliest point in lexicographic
// index order, and the final best is re-evaluated at the reported argmax.
MaximizerReport maximize_mass(const Family& family, const GridSpec& spec = {});

// Optional per-sample sink used by the CSV export; called for coarse samples.
MaximizerReport maximize_mass(
    const Family& family, const GridSpec& spec,
    const std::function<void(const double*, double)>& coarse_sink);

}  // namespace pwidths

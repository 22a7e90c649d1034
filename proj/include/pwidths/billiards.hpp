// Billiard trajectories in convex polygons: specular reflection, the
// T-variant that reflects at a vertex across the line through it parallel to
// the opposite side, straight-line unfolding, and length quantization.
#pragma once

#include <optional>

#include "pwidths/geom.hpp"
#include "pwidths/widths.hpp"

namespace pwidths {

struct ModeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class BilliardMode { Plain, Triangle };

enum class TerminalKind { Periodic, OrthogonalChord, VertexTerminated, Truncated };

enum class TruncationReason { None, BounceBudget, LengthBudget, Tangential };

struct Terminal {
  TerminalKind kind = TerminalKind::Truncated;
  TruncationReason reason = TruncationReason::None;
  double closure_residual = 0.0;  // Periodic only: max position/direction gap
  int vertex = -1;                // VertexTerminated only
};

struct Bounce {
  Point2 point;
  BoundaryFeature feature;
  Vec2 dir_in;
  Vec2 dir_out;
  Line2 mirror;  // edge line, or the parallel-through-vertex line in Triangle mode
};

struct Trajectory {
  std::vector<Segment2> segments;
  std::vector<Bounce> bounces;
  Terminal terminal;
  Point2 start;
  Vec2 start_dir;
  double length() const;
};

struct StepResult {
  bool stop = false;
  Vec2 dir_out{};
  Line2 mirror{};
};

// One reflection at a boundary feature. Plain mode stops at vertices;
// Triangle mode (equilateral triangles only, else ModeError) reflects there
// across the line through the vertex parallel to the opposite side.
StepResult step_reflect(const ConvexPolygon& poly, Point2 at, BoundaryFeature feature,
                        Vec2 dir_in, BilliardMode mode);

struct SimulateOptions {
  BilliardMode mode = BilliardMode::Plain;
  int max_bounces = 10000;
  double max_length = 0.0;  // 0 selects 1000 * diameter(poly)
};

// Traces from `start` along `dir` until one of the terminal conditions:
//   periodic          return to the start with the starting direction (1e-9)
//   orthogonal-chord  started orthogonally from the boundary and arrived
//                     orthogonally at an edge (1e-9 rad)
//   vertex-terminated plain mode only
//   truncated         bounce budget, length budget, or a near-tangential hit
Trajectory simulate(const ConvexPolygon& poly, Point2 start, Vec2 dir,
                    const SimulateOptions& opt = {});

struct Unfolding {
  std::vector<Point2> points;  // images of the bounce points, then the endpoint
  double residual = 0.0;       // max distance from the line start..back()
  double straight_length = 0.0;
};

// Applies the accumulated mirror reflections so the trajectory becomes a
// straight segment; residual measures how far the images drift from it.
Unfolding unfold(const Trajectory& traj);

struct TessellationElement {
  Isometry g;
  int depth = 0;
};

// Orbit of the identity under words of length <= depth in the polygon's edge
// reflections, deduplicated by the image of the vertex set.
std::vector<TessellationElement> tessellate(const ConvexPolygon& poly, int depth);

struct LatticeFit {
  bool closed = false;  // trajectory reached a genuine terminal (not truncated)
  int a = 0;
  int b = 0;
  long long n = 0;
  double residual = 0.0;  // |length - fitted lattice value|
};

// Matches a closed-trajectory length against the admissible length lattice.
LatticeFit lattice_fit_length(LatticeKind kind, double length);

// Convenience: fit a simulated trajectory in the equilateral triangle or the
// square. Truncated trajectories report closed = false.
LatticeFit lattice_membership(const Trajectory& traj, LatticeKind kind);

}  // namespace pwidths

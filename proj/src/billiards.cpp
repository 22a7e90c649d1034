#include "pwidths/billiards.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pwidths {
namespace {

bool is_equilateral_triangle(const ConvexPolygon& poly) {
  if (poly.size() != 3) return false;
  double l0 = poly.edge(0).length();
  return std::abs(poly.edge(1).length() - l0) <= 1e-9 &&
         std::abs(poly.edge(2).length() - l0) <= 1e-9;
}

// Line through vertex i parallel to the opposite side of a triangle.
Line2 vertex_parallel_line(const ConvexPolygon& tri, int i) {
  Segment2 opposite = tri.edge(i + 1);
  return Line2::point_dir(tri.vertex(i), opposite.b - opposite.a);
}

bool on_boundary(const ConvexPolygon& poly, Point2 p, BoundaryFeature* feat) {
  try {
    *feat = poly.classify_boundary(p);
    return true;
  } catch (const BoundaryPointError&) {
    return false;
  }
}

}  // namespace

double Trajectory::length() const {
  double s = 0.0;
  for (const auto& seg : segments) s += seg.length();
  return s;
}

StepResult step_reflect(const ConvexPolygon& poly, Point2 /*at*/,
                        BoundaryFeature feature, Vec2 dir_in, BilliardMode mode) {
  StepResult out;
  if (feature.at_vertex) {
    if (mode == BilliardMode::Plain) {
      out.stop = true;
      return out;
    }
    if (!is_equilateral_triangle(poly))
      throw ModeError("triangle reflection mode requires an equilateral triangle");
    out.mirror = vertex_parallel_line(poly, feature.index);
  } else {
    out.mirror = poly.edge_line(feature.index);
  }
  out.dir_out = reflect_direction(dir_in, out.mirror);
  return out;
}

Trajectory simulate(const ConvexPolygon& poly, Point2 start, Vec2 dir,
                    const SimulateOptions& opt) {
  if (opt.mode == BilliardMode::Triangle && !is_equilateral_triangle(poly))
    throw ModeError("triangle reflection mode requires an equilateral triangle");

  Trajectory traj;
  traj.start = start;
  traj.start_dir = normalized(dir);
  double max_length = opt.max_length > 0.0 ? opt.max_length : 1e3 * poly.diameter();

  // Orthogonal launches are remembered so a later orthogonal arrival closes
  // the chord; measured against the edge (or, at a vertex in triangle mode,
  // against the parallel-through-vertex line).
  bool orthogonal_start = false;
  BoundaryFeature start_feat;
  if (on_boundary(poly, start, &start_feat)) {
    Vec2 along;
    if (!start_feat.at_vertex) {
      along = poly.edge_unit(start_feat.index);
      orthogonal_start = std::abs(dot(traj.start_dir, along)) <= tol::kAngle;
    } else if (opt.mode == BilliardMode::Triangle) {
      along = normalized(vertex_parallel_line(poly, start_feat.index).direction());
      orthogonal_start = std::abs(dot(traj.start_dir, along)) <= tol::kAngle;
    }
  }

  Point2 pos = start;
  Vec2 d = traj.start_dir;
  double total = 0.0;

  for (int bounce_count = 0;; ++bounce_count) {
    BoundaryHit hit = ray_polygon_exit(poly, pos, d);

    // A return to the start point with the starting direction closes the
    // orbit; the return may land inside a segment when the start is not a
    // bounce point, so the check cannot wait for the next reflection.
    if (!traj.bounces.empty()) {
      double s = dot(start - pos, d);
      if (s > tol::kClose && s < hit.t - tol::kVertexSnap) {
        Point2 close_pt = pos + s * d;
        double pos_gap = dist(close_pt, start);
        double dir_gap = norm(d - traj.start_dir);
        if (pos_gap <= tol::kClose && dir_gap <= tol::kClose) {
          traj.segments.push_back({pos, close_pt});
          traj.terminal = {TerminalKind::Periodic, TruncationReason::None,
                           std::max(pos_gap, dir_gap), -1};
          return traj;
        }
      }
    }

    traj.segments.push_back({pos, hit.point});
    total += hit.t;

    if (total > max_length) {
      traj.terminal = {TerminalKind::Truncated, TruncationReason::LengthBudget, 0.0, -1};
      return traj;
    }

    if (!hit.feature.at_vertex) {
      // Orthogonal arrival at an edge interior ends an orthogonal chord.
      Vec2 along = poly.edge_unit(hit.feature.index);
      if (orthogonal_start && std::abs(dot(d, along)) <= tol::kAngle) {
        traj.terminal = {TerminalKind::OrthogonalChord, TruncationReason::None, 0.0, -1};
        return traj;
      }
    } else if (opt.mode == BilliardMode::Plain) {
      traj.terminal = {TerminalKind::VertexTerminated, TruncationReason::None, 0.0,
                       hit.feature.index};
      return traj;
    }

    StepResult step = step_reflect(poly, hit.point, hit.feature, d, opt.mode);
    // Reflection across a mirror the ray almost contains is unstable.
    double h = std::hypot(step.mirror.a, step.mirror.b);
    if (std::abs(step.mirror.a * d.x + step.mirror.b * d.y) / h < tol::kTangent) {
      traj.terminal = {TerminalKind::Truncated, TruncationReason::Tangential, 0.0, -1};
      return traj;
    }
    traj.bounces.push_back({hit.point, hit.feature, d, step.dir_out, step.mirror});

    double pos_gap = dist(hit.point, start);
    double dir_gap = norm(step.dir_out - traj.start_dir);
    if (pos_gap <= tol::kClose && dir_gap <= tol::kClose) {
      traj.terminal = {TerminalKind::Periodic, TruncationReason::None,
                       std::max(pos_gap, dir_gap), -1};
      return traj;
    }

    if (bounce_count + 1 >= opt.max_bounces) {
      traj.terminal = {TerminalKind::Truncated, TruncationReason::BounceBudget, 0.0, -1};
      return traj;
    }

    pos = hit.point;
    d = step.dir_out;
  }
}

Unfolding unfold(const Trajectory& traj) {
  Unfolding out;
  if (traj.segments.empty()) return out;

  // Segment k+1 is mapped by the composition of the first k mirror
  // reflections, applied outermost-first; each bounce point is fixed by its
  // own mirror, so consecutive images share endpoints and line up.
  out.points.push_back(traj.segments.front().a);
  Isometry acc = Isometry::identity();
  for (size_t k = 0; k < traj.segments.size(); ++k) {
    // acc becomes R_1 o ... o R_k: the new mirror acts first, then the rest.
    if (k > 0) acc = Isometry::reflection(traj.bounces[k - 1].mirror).then(acc);
    out.points.push_back(acc.apply(traj.segments[k].b));
  }

  Point2 p0 = out.points.front();
  Point2 p1 = out.points.back();
  out.straight_length = dist(p0, p1);
  double res = 0.0;
  if (out.straight_length > tol::kOnLine) {
    Vec2 u = normalized(p1 - p0);
    for (const auto& q : out.points) res = std::max(res, std::abs(cross(u, q - p0)));
  }
  out.residual = res;
  return out;
}

std::vector<TessellationElement> tessellate(const ConvexPolygon& poly, int depth) {
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
  std::vector<Isometry> mirrors;
  for (int i = 0; i < poly.size(); ++i)
    mirrors.push_back(Isometry::reflection(poly.edge_line(i)));

  auto key_of = [&](const Isometry& g) {
    std::vector<double> key;
    for (const auto& v : poly.vertices()) {
      Point2 q = g.apply(v);
      key.push_back(q.x);
      key.push_back(q.y);
    }
    return key;
  };
  auto same_key = [](const std::vector<double>& a, const std::vector<double>& b) {
    for (size_t i = 0; i < a.size(); ++i)
      if (std::abs(a[i] - b[i]) > tol::kVertexSnap) return false;
    return true;
  };

  std::vector<TessellationElement> out;
  std::vector<std::vector<double>> keys;
  out.push_back({Isometry::identity(), 0});
  keys.push_back(key_of(out[0].g));

  size_t frontier_begin = 0;
  for (int level = 1; level <= depth; ++level) {
    size_t frontier_end = out.size();
    for (size_t i = frontier_begin; i < frontier_end; ++i) {
      for (const auto& m : mirrors) {
        // Right multiplication: the new mirror acts first, as in unfold().
        Isometry g = m.then(out[i].g);
        auto key = key_of(g);
        bool seen = false;
        for (const auto& k : keys) {
          if (same_key(k, key)) {
            seen = true;
            break;
          }
        }
        if (!seen) {
          out.push_back({g, level});
          keys.push_back(std::move(key));
        }
      }
    }
    frontier_begin = frontier_end;
  }
  return out;
}

LatticeFit lattice_fit_length(LatticeKind kind, double length) {
  if (!(length > 0.0)) throw std::invalid_argument("length must be positive");
  LengthLattice lattice = lattice_lengths(kind, length + 3.0);
  LatticeFit fit;
  fit.closed = true;
  fit.residual = std::numeric_limits<double>::infinity();
  for (const auto& lv : lattice.values) {
    double r = std::abs(lv.value - length);
    if (r < fit.residual) {
      fit.residual = r;
      fit.a = lv.a;
      fit.b = lv.b;
      fit.n = lv.n;
    }
  }
  return fit;
}

LatticeFit lattice_membership(const Trajectory& traj, LatticeKind kind) {
  if (traj.terminal.kind == TerminalKind::Truncated) return {};
  return lattice_fit_length(kind, traj.length());
}

}  // namespace pwidths

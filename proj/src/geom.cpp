#include "pwidths/geom.hpp"

#include <algorithm>
#include <limits>

namespace pwidths {

Vec2 normalized(Vec2 v) {
  double n = norm(v);
  if (n < 1e-300) throw std::invalid_argument("cannot normalize zero vector");
  return {v.x / n, v.y / n};
}

Line2 Line2::from_coeffs(double a, double b, double c) {
  double n = std::sqrt(a * a + b * b + c * c);
  if (std::hypot(a, b) < 1e-300)
    throw std::invalid_argument("line requires nonzero (a,b)");
  Line2 l{a / n, b / n, c / n};
  // Canonical sign: first nonzero of (a,b,c) positive.
  double lead = l.a;
  if (lead == 0.0) lead = l.b;
  if (lead == 0.0) lead = l.c;
  if (lead < 0.0) {
    l.a = -l.a;
    l.b = -l.b;
    l.c = -l.c;
  }
  // Normalize -0.0 so canonical coefficients compare cleanly.
  if (l.a == 0.0) l.a = 0.0;
  if (l.b == 0.0) l.b = 0.0;
  if (l.c == 0.0) l.c = 0.0;
  return l;
}

Line2 Line2::through(Point2 p, Point2 q) { return point_dir(p, q - p); }

Line2 Line2::point_dir(Point2 p, Vec2 dir) {
  Vec2 n = perp(normalized(dir));
  return from_coeffs(n.x, n.y, -(n.x * p.x + n.y * p.y));
}

bool same_line(const Line2& l, const Line2& m, double eps) {
  return std::abs(l.a - m.a) <= eps && std::abs(l.b - m.b) <= eps &&
         std::abs(l.c - m.c) <= eps;
}

bool lines_intersect(const Line2& l, const Line2& m, Point2* out) {
  double det = l.a * m.b - l.b * m.a;
  if (std::abs(det) < 1e-14) return false;
  out->x = (l.b * m.c - l.c * m.b) / det;
  out->y = (l.c * m.a - l.a * m.c) / det;
  return true;
}

Point2 reflect_point(Point2 p, const Line2& l) {
  double h = std::hypot(l.a, l.b);
  double s = 2.0 * l.eval(p) / (h * h);
  return {p.x - s * l.a, p.y - s * l.b};
}

Vec2 reflect_direction(Vec2 d, const Line2& l) {
  double h = std::hypot(l.a, l.b);
  double s = 2.0 * (l.a * d.x + l.b * d.y) / (h * h);
  return {d.x - s * l.a, d.y - s * l.b};
}

Isometry Isometry::reflection(const Line2& l) {
  double h = std::hypot(l.a, l.b);
  double nx = l.a / h, ny = l.b / h, c = l.c / h;
  Isometry g;
  g.r00 = 1.0 - 2.0 * nx * nx;
  g.r01 = -2.0 * nx * ny;
  g.r10 = -2.0 * nx * ny;
  g.r11 = 1.0 - 2.0 * ny * ny;
  g.t = {-2.0 * c * nx, -2.0 * c * ny};
  return g;
}

Isometry Isometry::then(const Isometry& g) const {
  Isometry h;
  h.r00 = g.r00 * r00 + g.r01 * r10;
  h.r01 = g.r00 * r01 + g.r01 * r11;
  h.r10 = g.r10 * r00 + g.r11 * r10;
  h.r11 = g.r10 * r01 + g.r11 * r11;
  Vec2 gt = g.apply_vector(t);
  h.t = {gt.x + g.t.x, gt.y + g.t.y};
  return h;
}

ConvexPolygon::ConvexPolygon(std::vector<Point2> vertices) : v_(std::move(vertices)) {
  int n = static_cast<int>(v_.size());
  if (n < 3) throw InvalidPolygonError("polygon needs at least 3 vertices");
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (dist(v_[i], v_[j]) <= tol::kVertexSnap)
        throw InvalidPolygonError("repeated vertex");
    }
  }
  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, norm(v_[i]));
  double turn_eps = 1e-12 * std::max(1.0, scale * scale);
  for (int i = 0; i < n; ++i) {
    Vec2 e0 = v_[(i + 1) % n] - v_[i];
    Vec2 e1 = v_[(i + 2) % n] - v_[(i + 1) % n];
    double turn = cross(e0, e1);
    if (turn <= turn_eps)
      throw InvalidPolygonError(
          "vertices must be strictly convex in counterclockwise order");
  }
}

Line2 ConvexPolygon::edge_line(int i) const {
  Segment2 e = edge(i);
  return Line2::through(e.a, e.b);
}

Vec2 ConvexPolygon::edge_unit(int i) const {
  Segment2 e = edge(i);
  return normalized(e.b - e.a);
}

Vec2 ConvexPolygon::edge_outward_normal(int i) const {
  Vec2 u = edge_unit(i);
  return {u.y, -u.x};  // right of travel = outside for counterclockwise order
}

double ConvexPolygon::perimeter() const {
  double s = 0.0;
  for (int i = 0; i < size(); ++i) s += edge(i).length();
  return s;
}

double ConvexPolygon::area() const {
  double s = 0.0;
  int n = size();
  for (int i = 0; i < n; ++i) s += cross(v_[i], v_[(i + 1) % n]);
  return 0.5 * s;
}

double ConvexPolygon::diameter() const {
  double best = 0.0;
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j) best = std::max(best, dist(v_[i], v_[j]));
  return best;
}

Point2 ConvexPolygon::centroid() const {
  double cx = 0.0, cy = 0.0, a = 0.0;
  int n = size();
  for (int i = 0; i < n; ++i) {
    double w = cross(v_[i], v_[(i + 1) % n]);
    a += w;
    cx += (v_[i].x + v_[(i + 1) % n].x) * w;
    cy += (v_[i].y + v_[(i + 1) % n].y) * w;
  }
  return {cx / (3.0 * a), cy / (3.0 * a)};
}

bool ConvexPolygon::contains(Point2 p, double eps) const {
  for (int i = 0; i < size(); ++i) {
    if (dot(edge_outward_normal(i), p - v_[i]) > eps) return false;
  }
  return true;
}

Point2 ConvexPolygon::boundary_point(double t) const {
  double per = perimeter();
  t = std::fmod(t, per);
  if (t < 0.0) t += per;
  for (int i = 0; i < size(); ++i) {
    double len = edge(i).length();
    if (t <= len) {
      Vec2 u = edge_unit(i);
      return v_[i] + t * u;
    }
    t -= len;
  }
  return v_[0];
}

BoundaryFeature ConvexPolygon::classify_boundary(Point2 p) const {
  for (int i = 0; i < size(); ++i) {
    if (dist(p, v_[i]) <= tol::kVertexSnap) return {true, i};
  }
  for (int i = 0; i < size(); ++i) {
    Segment2 e = edge(i);
    Vec2 u = edge_unit(i);
    double s = dot(u, p - e.a);
    double d = std::abs(cross(u, p - e.a));
    if (d <= tol::kVertexSnap && s >= -tol::kVertexSnap &&
        s <= e.length() + tol::kVertexSnap)
      return {false, i};
  }
  throw BoundaryPointError("point is not on the polygon boundary");
}

BoundaryHit ray_polygon_exit(const ConvexPolygon& poly, Point2 origin, Vec2 dir) {
  Vec2 d = normalized(dir);
  if (!poly.contains(origin, tol::kVertexSnap))
    throw std::invalid_argument("ray origin outside polygon");
  double best_t = std::numeric_limits<double>::infinity();
  int best_edge = -1;
  for (int i = 0; i < poly.size(); ++i) {
    Vec2 nrm = poly.edge_outward_normal(i);
    double nd = dot(nrm, d);
    if (nd <= 0.0) continue;  // receding or exactly parallel: never exits here
    double gap = -dot(nrm, origin - poly.vertex(i));  // distance to edge line
    double t = gap / nd;
    // Near-parallel edges stay in play so that a grazing approach surfaces
    // as a boundary hit; skipping them entirely would overshoot to a later
    // edge. They are dropped only when the ray starts on the edge line
    // itself, where gap / nd is rounding noise.
    if (nd <= tol::kTangent && t <= tol::kOnLine) continue;
    if (t < best_t) {
      best_t = t;
      best_edge = i;
    }
  }
  if (best_edge < 0 || best_t == std::numeric_limits<double>::infinity())
    throw RayExitError("ray does not exit the polygon");
  if (best_t <= tol::kOnLine)
    throw RayExitError("ray leaves the polygon immediately");
  BoundaryHit hit;
  hit.t = best_t;
  hit.point = origin + best_t * d;
  hit.feature = {false, best_edge};
  Segment2 e = poly.edge(best_edge);
  int n = poly.size();
  if (dist(hit.point, e.a) <= tol::kVertexSnap) {
    hit.feature = {true, best_edge};
    hit.point = e.a;
  } else if (dist(hit.point, e.b) <= tol::kVertexSnap) {
    hit.feature = {true, (best_edge + 1) % n};
    hit.point = e.b;
  }
  return hit;
}

Chord polygon_chord(const ConvexPolygon& poly, const Line2& l) {
  for (int i = 0; i < poly.size(); ++i) {
    if (same_line(l, poly.edge_line(i))) {
      Chord c;
      c.kind = ChordKind::EdgeOverlap;
      c.seg = poly.edge(i);
      c.overlap_edge = i;
      return c;
    }
  }
  // Clip the line against each edge half-plane in the parameter s of
  // p0 + s * dir, where p0 is the foot of the origin on l.
  double h = std::hypot(l.a, l.b);
  Point2 p0{-l.a * l.c / (h * h), -l.b * l.c / (h * h)};
  Vec2 u = normalized(l.direction());
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (int i = 0; i < poly.size(); ++i) {
    Vec2 nrm = poly.edge_outward_normal(i);
    double nu = dot(nrm, u);
    double g = dot(nrm, p0 - poly.vertex(i));  // g + s*nu <= 0 required
    if (std::abs(nu) < 1e-15) {
      if (g > tol::kOnLine) return {};  // entirely outside this half-plane
      continue;
    }
    double s = -g / nu;
    if (nu > 0.0)
      hi = std::min(hi, s);
    else
      lo = std::max(lo, s);
  }
  // Tangency at a vertex leaves a degenerate interval; count it as empty.
  if (hi - lo <= tol::kOnLine) return {};
  Chord c;
  c.kind = ChordKind::Segment;
  c.seg = {p0 + lo * u, p0 + hi * u};
  return c;
}

bool clip_segment(const ConvexPolygon& poly, Segment2 s, Segment2* out) {
  Vec2 d = s.b - s.a;
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < poly.size(); ++i) {
    Vec2 nrm = poly.edge_outward_normal(i);
    double nd = dot(nrm, d);
    double g = dot(nrm, s.a - poly.vertex(i));
    if (std::abs(nd) < 1e-15) {
      if (g > tol::kOnLine) return false;
      continue;
    }
    double t = -g / nd;
    if (nd > 0.0)
      hi = std::min(hi, t);
    else
      lo = std::max(lo, t);
    if (lo > hi) return false;
  }
  *out = {s.a + lo * d, s.a + hi * d};
  return true;
}

double convex_intersection_area(const ConvexPolygon& a, const ConvexPolygon& b) {
  std::vector<Point2> ring = a.vertices();
  for (int i = 0; i < b.size() && !ring.empty(); ++i) {
    Vec2 nrm = b.edge_outward_normal(i);
    Point2 base = b.vertex(i);
    std::vector<Point2> next;
    int m = static_cast<int>(ring.size());
    for (int j = 0; j < m; ++j) {
      Point2 p = ring[j], q = ring[(j + 1) % m];
      double dp = dot(nrm, p - base), dq = dot(nrm, q - base);
      if (dp <= 0.0) next.push_back(p);
      if ((dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0)) {
        double t = dp / (dp - dq);
        next.push_back(p + t * (q - p));
      }
    }
    ring = std::move(next);
  }
  if (ring.size() < 3) return 0.0;
  double s = 0.0;
  int m = static_cast<int>(ring.size());
  for (int j = 0; j < m; ++j) s += cross(ring[j], ring[(j + 1) % m]);
  return 0.5 * std::abs(s);
}

Plane3 Plane3::from_coeffs(double a, double b, double c, double d) {
  double n = std::sqrt(a * a + b * b + c * c);
  if (n < 1e-300) throw std::invalid_argument("plane requires nonzero normal");
  return {a / n, b / n, c / n, d / n};
}

Plane3 Plane3::through(Point3 p, Point3 q, Point3 r) {
  Vec3 n = cross(q - p, r - p);
  return from_coeffs(n.x, n.y, n.z, -dot(n, p));
}

Tetrahedron Tetrahedron::regular(double side) {
  // Vertices of a cube scaled so the face diagonals have length `side`.
  double s = side / std::sqrt(8.0);
  return {{Point3{s, s, s}, Point3{s, -s, -s}, Point3{-s, s, -s}, Point3{-s, -s, s}}};
}

std::array<int, 3> Tetrahedron::face(int i) const {
  std::array<int, 3> f{};
  int k = 0;
  for (int j = 0; j < 4; ++j)
    if (j != i) f[k++] = j;
  return f;
}

bool Tetrahedron::contains(Point3 p, double eps) const {
  for (int i = 0; i < 4; ++i) {
    auto f = face(i);
    Plane3 pl = Plane3::through(v[f[0]], v[f[1]], v[f[2]]);
    double inner = pl.eval(v[i]);
    double side = pl.eval(p);
    // p must be on the same side as the opposite vertex (or on the plane).
    if (inner > 0.0 ? side < -eps : side > eps) return false;
  }
  return true;
}

double PlaneSection::perimeter() const {
  switch (kind) {
    case SectionKind::Empty:
    case SectionKind::Point:
      return 0.0;
    case SectionKind::Segment:
      return 2.0 * dist(vertices[0], vertices[1]);
    case SectionKind::Polygon:
    case SectionKind::ContainsFace: {
      double s = 0.0;
      int n = static_cast<int>(vertices.size());
      for (int i = 0; i < n; ++i) s += dist(vertices[i], vertices[(i + 1) % n]);
      return s;
    }
  }
  return 0.0;
}

PlaneSection plane_tetrahedron_section(const Tetrahedron& tet, const Plane3& plane) {
  std::array<double, 4> s{};
  for (int i = 0; i < 4; ++i) s[i] = plane.eval(tet.v[i]);

  std::vector<int> zero, pos, neg;
  for (int i = 0; i < 4; ++i) {
    if (std::abs(s[i]) <= tol::kOnLine)
      zero.push_back(i);
    else if (s[i] > 0.0)
      pos.push_back(i);
    else
      neg.push_back(i);
  }

  PlaneSection sec;
  if (zero.size() >= 3) {
    sec.kind = SectionKind::ContainsFace;
    // The face is the one opposite the unique off-plane vertex.
    int off = pos.empty() ? (neg.empty() ? 0 : neg[0]) : pos[0];
    sec.face = off;
    for (int j : tet.face(off)) sec.vertices.push_back(tet.v[j]);
    return sec;
  }

  std::vector<Point3> pts;
  for (int i : zero) pts.push_back(tet.v[i]);
  for (int i : pos) {
    for (int j : neg) {
      double t = s[i] / (s[i] - s[j]);
      pts.push_back(tet.v[i] + t * (tet.v[j] - tet.v[i]));
    }
  }

  if (pts.empty()) return sec;  // Empty
  if (pts.size() == 1) {
    sec.kind = SectionKind::Point;
    sec.vertices = pts;
    return sec;
  }
  if (pts.size() == 2) {
    sec.kind = SectionKind::Segment;
    sec.vertices = pts;
    return sec;
  }

  // Triangle or quadrilateral: order by angle around the centroid in-plane.
  Point3 ctr{0, 0, 0};
  for (const auto& p : pts) ctr = ctr + p;
  ctr = (1.0 / static_cast<double>(pts.size())) * ctr;
  Vec3 n{plane.a, plane.b, plane.c};
  Vec3 ref = pts[0] - ctr;
  Vec3 e1 = (1.0 / norm(ref)) * ref;
  Vec3 e2 = cross(n, e1);
  std::sort(pts.begin(), pts.end(), [&](const Point3& p, const Point3& q) {
    double ap = std::atan2(dot(p - ctr, e2), dot(p - ctr, e1));
    double aq = std::atan2(dot(q - ctr, e2), dot(q - ctr, e1));
    return ap < aq;
  });
  sec.kind = SectionKind::Polygon;
  sec.vertices = std::move(pts);
  return sec;
}

}  // namespace pwidths

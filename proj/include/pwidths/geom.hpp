// Planar and spatial primitives shared by every module: points, lines,
// convex polygons, planes, tetrahedra, and the exact-ish predicates on them.
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace pwidths {

// Central tolerances. All are absolute; the canonical domains have diameter ~2.
namespace tol {
inline constexpr double kOnLine = 1e-12;      // incidence: point on line / plane
inline constexpr double kVertexSnap = 1e-9;   // boundary hits this close to a vertex are vertex hits
inline constexpr double kClose = 1e-9;        // phase-space closure (position and direction)
inline constexpr double kAngle = 1e-9;        // orthogonality test, radians
inline constexpr double kTangent = 1e-12;     // near-tangential bounce cutoff
inline constexpr double kArea = 1e-12;        // piece-overlap area threshold
inline constexpr double kCertify = 1e-7;      // max |upper - lower| for a certified value
inline constexpr double kQuadrature = 1e-10;  // arc-length quadrature, absolute
}  // namespace tol

struct InvalidPolygonError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct RayExitError : std::domain_error {
  using std::domain_error::domain_error;
};
struct BoundaryPointError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};
using Point2 = Vec2;

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline Vec2 operator-(Vec2 v) { return {-v.x, -v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double dist(Point2 a, Point2 b) { return norm(b - a); }
inline Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

Vec2 normalized(Vec2 v);  // throws std::invalid_argument on (near-)zero input

struct Segment2 {
  Point2 a;
  Point2 b;
  double length() const { return dist(a, b); }
  Point2 midpoint() const { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }
};

// Oriented-free line a*x + b*y + c = 0 with (a,b,c) of unit Euclidean norm and
// the first nonzero coefficient positive, so equal lines compare bitwise-close.
struct Line2 {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  static Line2 from_coeffs(double a, double b, double c);
  static Line2 through(Point2 p, Point2 q);
  static Line2 point_dir(Point2 p, Vec2 dir);

  double eval(Point2 p) const { return a * p.x + b * p.y + c; }
  double signed_distance(Point2 p) const { return eval(p) / std::hypot(a, b); }
  Vec2 direction() const { return {-b, a}; }  // unit, since (a,b) is unit up to c-share
};

bool same_line(const Line2& l, const Line2& m, double eps = 1e-9);
bool lines_intersect(const Line2& l, const Line2& m, Point2* out);

Point2 reflect_point(Point2 p, const Line2& l);
Vec2 reflect_direction(Vec2 d, const Line2& l);

// Rigid motion x -> R x + t with R orthogonal; composition of line reflections.
struct Isometry {
  double r00 = 1.0, r01 = 0.0, r10 = 0.0, r11 = 1.0;
  Vec2 t;

  static Isometry identity() { return {}; }
  static Isometry reflection(const Line2& l);
  Point2 apply(Point2 p) const {
    return {r00 * p.x + r01 * p.y + t.x, r10 * p.x + r11 * p.y + t.y};
  }
  Vec2 apply_vector(Vec2 v) const {
    return {r00 * v.x + r01 * v.y, r10 * v.x + r11 * v.y};
  }
  Isometry then(const Isometry& g) const;  // g after *this: x -> g(this(x))
  double det() const { return r00 * r11 - r01 * r10; }
};

struct BoundaryFeature {
  bool at_vertex = false;
  int index = -1;  // vertex index if at_vertex, else edge index
};

// Counterclockwise, strictly convex polygon. The constructor rejects fewer
// than 3 vertices, repeated vertices, clockwise order, and reflex or straight
// angles, so every instance downstream is a valid open convex domain.
class ConvexPolygon {
 public:
  explicit ConvexPolygon(std::vector<Point2> vertices);

  const std::vector<Point2>& vertices() const { return v_; }
  int size() const { return static_cast<int>(v_.size()); }
  Point2 vertex(int i) const { return v_[wrap(i)]; }
  Segment2 edge(int i) const { return {v_[wrap(i)], v_[wrap(i + 1)]}; }
  Line2 edge_line(int i) const;
  Vec2 edge_unit(int i) const;            // unit vector along edge i
  Vec2 edge_outward_normal(int i) const;  // unit outward normal of edge i

  double perimeter() const;
  double area() const;
  double diameter() const;
  Point2 centroid() const;

  bool contains(Point2 p, double eps = tol::kOnLine) const;

  // Arc-length parametrization of the boundary, counterclockwise from v[0];
  // t wraps modulo the perimeter.
  Point2 boundary_point(double t) const;

  // Locates p on the boundary; vertex wins within tol::kVertexSnap.
  // Throws BoundaryPointError if p is farther than kVertexSnap from every edge.
  BoundaryFeature classify_boundary(Point2 p) const;

 private:
  int wrap(int i) const {
    int n = size();
    return ((i % n) + n) % n;
  }
  std::vector<Point2> v_;
};

struct BoundaryHit {
  Point2 point;
  BoundaryFeature feature;
  double t = 0.0;  // ray parameter, so point = origin + t * dir
};

// First boundary point strictly ahead of origin along dir (origin must be in
// the closed polygon). Hits within tol::kVertexSnap of a vertex snap to it.
// Throws RayExitError when the ray leaves immediately (origin on the boundary
// with dir pointing outward).
BoundaryHit ray_polygon_exit(const ConvexPolygon& poly, Point2 origin, Vec2 dir);

enum class ChordKind { Empty, Segment, EdgeOverlap };

struct Chord {
  ChordKind kind = ChordKind::Empty;
  Segment2 seg{};       // valid for Segment and EdgeOverlap
  int overlap_edge = -1;
  double length() const { return kind == ChordKind::Empty ? 0.0 : seg.length(); }
};

Chord polygon_chord(const ConvexPolygon& poly, const Line2& l);

// Intersection of a segment with the closed polygon; false when empty.
bool clip_segment(const ConvexPolygon& poly, Segment2 s, Segment2* out);

// Area of the intersection of two convex polygons (Sutherland-Hodgman clip).
double convex_intersection_area(const ConvexPolygon& a, const ConvexPolygon& b);

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};
using Point3 = Vec3;

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }
inline double dist(Point3 a, Point3 b) { return norm(b - a); }

// Plane a*x + b*y + c*z + d = 0; construction normalizes (a,b,c) to unit norm.
struct Plane3 {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
  double d = 0.0;

  static Plane3 from_coeffs(double a, double b, double c, double d);
  static Plane3 through(Point3 p, Point3 q, Point3 r);
  double eval(Point3 p) const { return a * p.x + b * p.y + c * p.z + d; }
};

struct Tetrahedron {
  std::array<Point3, 4> v;

  static Tetrahedron regular(double side);  // centered at the origin
  double edge_length() const { return dist(v[0], v[1]); }
  std::array<int, 3> face(int i) const;  // vertex indices of face opposite v[i]
  bool contains(Point3 p, double eps = tol::kOnLine) const;
};

enum class SectionKind { Empty, Point, Segment, Polygon, ContainsFace };

// Cross-section of a tetrahedron by a plane. For Polygon the vertices are in
// cyclic order; for Segment both endpoints are stored; for ContainsFace the
// face index is set and the perimeter reported is that face's perimeter.
struct PlaneSection {
  SectionKind kind = SectionKind::Empty;
  std::vector<Point3> vertices;
  int face = -1;
  // Degenerate segment sections count twice, as the boundary of a flat region.
  double perimeter() const;
};

PlaneSection plane_tetrahedron_section(const Tetrahedron& tet, const Plane3& plane);

}  // namespace pwidths

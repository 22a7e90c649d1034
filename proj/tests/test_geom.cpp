#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "pwidths/domains.hpp"
#include "pwidths/geom.hpp"

using namespace pwidths;

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kR = std::sqrt(2.0) / 2.0;

ConvexPolygon unit_square_at(double x0, double y0) {
  return ConvexPolygon({{x0, y0}, {x0 + 1, y0}, {x0 + 1, y0 + 1}, {x0, y0 + 1}});
}

}  // namespace

TEST_CASE("line canonical form") {
  Line2 l = Line2::through({0, 1}, {1, 1});  // y = 1, scaled to |(a,b,c)| = 1
  double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(l.a) <= 1e-15);
  CHECK(l.b == doctest::Approx(s).epsilon(1e-15));
  CHECK(l.c == doctest::Approx(-s).epsilon(1e-15));
  CHECK(l.signed_distance({5.0, 3.0}) == doctest::Approx(2.0).epsilon(1e-14));

  // Same geometric line from either orientation canonicalizes identically.
  Line2 m = Line2::through({5, 1}, {-2, 1});
  CHECK(same_line(l, m));
  CHECK(std::abs(l.a - m.a) <= 1e-15);
  CHECK(std::abs(l.b - m.b) <= 1e-15);
  CHECK(std::abs(l.c - m.c) <= 1e-15);

  CHECK_THROWS_AS(Line2::through({2, 3}, {2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(Line2::from_coeffs(0, 0, 1), std::invalid_argument);
}

TEST_CASE("reflection is an involution and fixes the mirror") {
  std::mt19937_64 rng(20260814u);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int it = 0; it < 200; ++it) {
    Point2 p{u(rng), u(rng)}, q{u(rng), u(rng)};
    if (dist(p, q) < 1e-6) continue;
    Line2 l = Line2::through(p, q);
    Point2 x{u(rng), u(rng)};
    Point2 r = reflect_point(x, l);
    CHECK(dist(reflect_point(r, l), x) <= 1e-12);
    CHECK(std::abs(l.signed_distance(r) + l.signed_distance(x)) <= 1e-12);
    CHECK(dist(reflect_point(p, l), p) <= 1e-12);

    Vec2 d = normalized(q - p);
    CHECK(norm(reflect_direction(d, l) - d) <= 1e-12);  // along-mirror fixed
  }
}

TEST_CASE("isometry composition order") {
  Line2 x_axis = Line2::through({0, 0}, {1, 0});
  Line2 diag = Line2::through({0, 0}, {1, 1});
  Isometry f = Isometry::reflection(x_axis);
  Isometry g = Isometry::reflection(diag);
  // g after f: (1, 2) -> (1, -2) -> (-2, 1).
  Point2 im = f.then(g).apply({1, 2});
  CHECK(dist(im, {-2, 1}) <= 1e-12);
  CHECK(f.det() == doctest::Approx(-1.0));
  CHECK(f.then(g).det() == doctest::Approx(1.0));
}

TEST_CASE("convex polygon validation") {
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}}), InvalidPolygonError);
  // Clockwise.
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {0, 1}, {1, 0}}), InvalidPolygonError);
  // Straight angle.
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}, {2, 0}, {1, 1}}), InvalidPolygonError);
  // Repeated vertex.
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 0}, {1, 0}, {0, 1}}), InvalidPolygonError);
  // Reflex quad.
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {2, 0}, {0.2, 0.2}, {0, 2}}), InvalidPolygonError);

  ConvexPolygon sq = unit_square_at(0, 0);
  CHECK(sq.size() == 4);
  CHECK(sq.perimeter() == doctest::Approx(4.0));
  CHECK(sq.area() == doctest::Approx(1.0));
  CHECK(sq.diameter() == doctest::Approx(std::sqrt(2.0)));
  CHECK(dist(sq.centroid(), {0.5, 0.5}) <= 1e-15);
}

TEST_CASE("builtin domains") {
  ConvexPolygon tri = builtin_triangle();
  CHECK(tri.size() == 3);
  for (int i = 0; i < 3; ++i)
    CHECK(tri.edge(i).length() == doctest::Approx(kSqrt3).epsilon(1e-14));
  CHECK(dist(tri.vertex(2), {kSqrt3 / 2, 1.5}) <= 1e-15);

  ConvexPolygon sq = builtin_square();
  CHECK(sq.size() == 4);
  for (int i = 0; i < 4; ++i)
    CHECK(sq.edge(i).length() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(sq.diameter() == doctest::Approx(2.0).epsilon(1e-14));

  Tetrahedron tet = builtin_tetrahedron();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      CHECK(dist(tet.v[i], tet.v[j]) == doctest::Approx(kSqrt3 / 2).epsilon(1e-13));
}

TEST_CASE("containment and boundary classification") {
  ConvexPolygon tri = builtin_triangle();
  CHECK(tri.contains(tri.centroid()));
  CHECK(tri.contains({0, 0}));  // vertices are in the closed polygon
  CHECK(!tri.contains({-0.1, 0}));
  CHECK(!tri.contains({kSqrt3 / 2, 1.5 + 1e-6}));

  BoundaryFeature f = tri.classify_boundary({0, 0});
  CHECK(f.at_vertex);
  CHECK(f.index == 0);
  f = tri.classify_boundary({0.7, 0});
  CHECK(!f.at_vertex);
  CHECK(f.index == 0);
  // Vertex wins within the snap distance.
  f = tri.classify_boundary({1e-10, 0});
  CHECK(f.at_vertex);
  CHECK_THROWS_AS(tri.classify_boundary(tri.centroid()), BoundaryPointError);
}

TEST_CASE("boundary arc-length parametrization") {
  ConvexPolygon tri = builtin_triangle();
  double per = tri.perimeter();
  CHECK(dist(tri.boundary_point(0), tri.vertex(0)) <= 1e-15);
  CHECK(dist(tri.boundary_point(kSqrt3), tri.vertex(1)) <= 1e-12);
  // Midpoint of BC is half a perimeter from A.
  Point2 mid_bc = tri.edge(1).midpoint();
  CHECK(dist(tri.boundary_point(per / 2), mid_bc) <= 1e-12);
  CHECK(dist(tri.boundary_point(per + 1.0), tri.boundary_point(1.0)) <= 1e-12);
  CHECK(dist(tri.boundary_point(-1.0), tri.boundary_point(per - 1.0)) <= 1e-12);
}

TEST_CASE("ray exit: edges, vertices, errors") {
  ConvexPolygon tri = builtin_triangle();

  // Straight up from the base midpoint: exits at the apex, a vertex hit.
  BoundaryHit hit = ray_polygon_exit(tri, {kSqrt3 / 2, 0.2}, {0, 1});
  CHECK(hit.feature.at_vertex);
  CHECK(hit.feature.index == 2);
  CHECK(dist(hit.point, {kSqrt3 / 2, 1.5}) <= 1e-12);
  CHECK(hit.t == doctest::Approx(1.3));

  // Interior start, edge hit.
  hit = ray_polygon_exit(tri, {kSqrt3 / 2, 0.5}, {0, -1});
  CHECK(!hit.feature.at_vertex);
  CHECK(hit.feature.index == 0);
  CHECK(dist(hit.point, {kSqrt3 / 2, 0}) <= 1e-12);

  // Start on the boundary going inward.
  hit = ray_polygon_exit(tri, {kSqrt3 / 2, 0}, {0, 1});
  CHECK(hit.feature.at_vertex);
  CHECK(hit.t == doctest::Approx(1.5));

  // Leaving immediately or from outside.
  CHECK_THROWS_AS(ray_polygon_exit(tri, {kSqrt3 / 2, 0}, {0, -1}), RayExitError);
  CHECK_THROWS_AS(ray_polygon_exit(tri, {-1, -1}, {0, 1}), std::invalid_argument);

  // A near-vertex hit snaps to the vertex exactly.
  hit = ray_polygon_exit(tri, {kSqrt3 / 2 + 1e-11, 0.2}, {0, 1});
  CHECK(hit.feature.at_vertex);
  CHECK(hit.point.x == tri.vertex(2).x);
  CHECK(hit.point.y == tri.vertex(2).y);
}

TEST_CASE("polygon chords") {
  ConvexPolygon sq = builtin_square();

  Chord c = polygon_chord(sq, Line2::through({0, -1}, {0, 1}));
  CHECK(c.kind == ChordKind::Segment);
  CHECK(c.length() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  // Diagonal of the square.
  c = polygon_chord(sq, Line2::through({-kR, -kR}, {kR, kR}));
  CHECK(c.kind == ChordKind::Segment);
  CHECK(c.length() == doctest::Approx(2.0).epsilon(1e-14));

  // A line along an edge overlaps it.
  c = polygon_chord(sq, Line2::through({kR, -kR}, {kR, kR}));
  CHECK(c.kind == ChordKind::EdgeOverlap);
  CHECK(c.overlap_edge == 0);
  CHECK(c.length() == doctest::Approx(std::sqrt(2.0)));

  // Missing and tangent lines.
  c = polygon_chord(sq, Line2::through({2, 0}, {2, 1}));
  CHECK(c.kind == ChordKind::Empty);
  // Through the top-right corner, dipping outside: at most a sliver.
  c = polygon_chord(sq, Line2::through({kR, kR}, {kR + 1, kR - 1e-3}));
  CHECK(c.length() <= 1e-6);

  // Random chord property: endpoints on the boundary, length <= diameter.
  ConvexPolygon tri = builtin_triangle();
  std::mt19937_64 rng(77u);
  std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
  for (int it = 0; it < 500; ++it) {
    double a = ang(rng);
    Line2 l = Line2::point_dir(tri.centroid(), {std::cos(a), std::sin(a)});
    Chord ch = polygon_chord(tri, l);
    REQUIRE(ch.kind == ChordKind::Segment);
    CHECK(ch.length() <= tri.diameter() + 1e-12);
    CHECK_NOTHROW(tri.classify_boundary(ch.seg.a));
    CHECK_NOTHROW(tri.classify_boundary(ch.seg.b));
  }
}

TEST_CASE("segment clipping") {
  ConvexPolygon sq = builtin_square();
  Segment2 out;
  CHECK(clip_segment(sq, {{-2, 0}, {2, 0}}, &out));
  CHECK(out.length() == doctest::Approx(2 * kR).epsilon(1e-14));
  CHECK(clip_segment(sq, {{0, 0}, {0.1, 0.1}}, &out));
  CHECK(out.length() == doctest::Approx(std::hypot(0.1, 0.1)));
  CHECK(!clip_segment(sq, {{2, 2}, {3, 3}}, &out));
}

TEST_CASE("convex intersection area") {
  ConvexPolygon a = unit_square_at(0, 0);
  ConvexPolygon b = unit_square_at(0.5, 0);
  CHECK(convex_intersection_area(a, b) == doctest::Approx(0.5).epsilon(1e-12));
  ConvexPolygon c = unit_square_at(2, 2);
  CHECK(convex_intersection_area(a, c) == doctest::Approx(0.0));
  // Shared edge only: zero area.
  ConvexPolygon d = unit_square_at(1, 0);
  CHECK(convex_intersection_area(a, d) <= 1e-12);
  CHECK(convex_intersection_area(a, a) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("plane construction") {
  Plane3 pl = Plane3::through({1, 0, 0}, {0, 1, 0}, {0, 0, 1});
  double s = 1.0 / std::sqrt(3.0);
  CHECK(std::abs(std::abs(pl.a) - s) <= 1e-14);
  CHECK(std::abs(pl.eval({1, 0, 0})) <= 1e-14);
  CHECK_THROWS_AS(Plane3::through({0, 0, 0}, {1, 1, 1}, {2, 2, 2}),
                  std::invalid_argument);
}

TEST_CASE("tetrahedron sections: shapes and perimeters") {
  Tetrahedron tet = builtin_tetrahedron();
  double ell = tet.edge_length();
  REQUIRE(ell == doctest::Approx(kSqrt3 / 2).epsilon(1e-13));

  // Corner cut through three edge midpoints: an equilateral triangle of side
  // ell/2 (midsegments of the faces), perimeter 3*ell/2.
  Point3 m01 = 0.5 * (tet.v[0] + tet.v[1]);
  Point3 m02 = 0.5 * (tet.v[0] + tet.v[2]);
  Point3 m03 = 0.5 * (tet.v[0] + tet.v[3]);
  PlaneSection sec = plane_tetrahedron_section(tet, Plane3::through(m01, m02, m03));
  CHECK(sec.kind == SectionKind::Polygon);
  REQUIRE(sec.vertices.size() == 3);
  CHECK(sec.perimeter() == doctest::Approx(1.5 * ell).epsilon(1e-12));

  // Medial square through four edge midpoints: perimeter 2*ell.
  Point3 m12 = 0.5 * (tet.v[1] + tet.v[2]);
  Point3 m13 = 0.5 * (tet.v[1] + tet.v[3]);
  Point3 m23 = 0.5 * (tet.v[2] + tet.v[3]);
  Plane3 medial = Plane3::through(m02, m03, m12);
  sec = plane_tetrahedron_section(tet, medial);
  CHECK(sec.kind == SectionKind::Polygon);
  REQUIRE(sec.vertices.size() == 4);
  CHECK(sec.perimeter() == doctest::Approx(2.0 * ell).epsilon(1e-12));
  for (const auto& q : sec.vertices) CHECK(tet.contains(q, 1e-9));
  // All four midpoints show up.
  for (Point3 m : {m02, m03, m12, m13}) {
    double best = 1e9;
    for (const auto& q : sec.vertices) best = std::min(best, dist(q, m));
    CHECK(best <= 1e-12);
  }
  // The plane separates the remaining opposite edge pair.
  CHECK(medial.eval(m01) * medial.eval(m23) < 0.0);

  // Face plane.
  auto fidx = tet.face(0);
  sec = plane_tetrahedron_section(
      tet, Plane3::through(tet.v[fidx[0]], tet.v[fidx[1]], tet.v[fidx[2]]));
  CHECK(sec.kind == SectionKind::ContainsFace);
  CHECK(sec.face == 0);
  CHECK(sec.perimeter() == doctest::Approx(3.0 * ell).epsilon(1e-12));

  // Plane touching a single vertex.
  Plane3 face0 = Plane3::through(tet.v[fidx[0]], tet.v[fidx[1]], tet.v[fidx[2]]);
  double s0 = face0.eval(tet.v[0]);
  Plane3 touch = Plane3::from_coeffs(face0.a, face0.b, face0.c, face0.d - s0);
  sec = plane_tetrahedron_section(tet, touch);
  CHECK(sec.kind == SectionKind::Point);
  CHECK(sec.perimeter() == doctest::Approx(0.0));

  // Plane through one edge, otherwise outside: a segment, counted twice. The
  // common perpendicular of opposite edges gives a normal direction that
  // keeps the other two vertices strictly on one side.
  Point3 a = tet.v[0], b = tet.v[1];
  Vec3 n_away = 0.5 * (a + b) - 0.5 * (tet.v[2] + tet.v[3]);
  Plane3 edge_plane = Plane3::through(a, b, a + cross(b - a, n_away));
  sec = plane_tetrahedron_section(tet, edge_plane);
  CHECK(sec.kind == SectionKind::Segment);
  CHECK(sec.perimeter() == doctest::Approx(2.0 * ell).epsilon(1e-12));

  // Empty.
  sec = plane_tetrahedron_section(tet, Plane3::from_coeffs(0, 0, 1, -5));
  CHECK(sec.kind == SectionKind::Empty);
}

TEST_CASE("tetrahedron sections: random planes stay on the plane") {
  Tetrahedron tet = builtin_tetrahedron();
  std::mt19937_64 rng(123456u);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int polys = 0;
  for (int it = 0; it < 2000; ++it) {
    Vec3 n{u(rng), u(rng), u(rng)};
    if (norm(n) < 1e-3) continue;
    Plane3 pl = Plane3::from_coeffs(n.x, n.y, n.z, 0.4 * u(rng));
    PlaneSection sec = plane_tetrahedron_section(tet, pl);
    if (sec.kind == SectionKind::Polygon) {
      ++polys;
      CHECK((sec.vertices.size() == 3 || sec.vertices.size() == 4));
      for (const auto& q : sec.vertices) {
        CHECK(std::abs(pl.eval(q)) <= 1e-12);
        CHECK(tet.contains(q, 1e-9));
      }
    }
  }
  CHECK(polys > 500);  // the sweep actually exercises the polygon branch
}

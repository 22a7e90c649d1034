#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "pwidths/domains.hpp"
#include "pwidths/widths.hpp"

using namespace pwidths;

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kR = std::sqrt(2.0) / 2.0;

// Slab width of a polygon along a fixed unit direction, for cross-checking.
double slab_width(const ConvexPolygon& poly, Vec2 n) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& v : poly.vertices()) {
    double s = dot(n, v);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return hi - lo;
}

ConvexPolygon random_convex(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> jit(-0.12, 0.12), rad(0.5, 2.0);
  std::vector<Point2> pts;
  int n = 7;
  double rx = rad(rng), ry = rad(rng);
  for (int i = 0; i < n; ++i) {
    double a = 2 * M_PI * i / n + jit(rng);
    pts.push_back({rx * std::cos(a), ry * std::sin(a)});
  }
  return ConvexPolygon(pts);
}

// Exhaustive multiset search with no pruning at all: a sum at or above the
// threshold is recorded and the branch stops, since supersets only grow.
void brute_rec(const std::vector<double>& vals, size_t i, int left, double sum,
               double threshold, double* best) {
  if (sum >= threshold) {
    *best = std::min(*best, sum);
    return;
  }
  if (left == 0) return;
  for (size_t j = i; j < vals.size(); ++j)
    brute_rec(vals, j, left - 1, sum + vals[j], threshold, best);
}

double brute_min_sum(const LengthLattice& lattice, double threshold) {
  std::vector<double> vals;
  for (const auto& lv : lattice.values) vals.push_back(lv.value);
  int cap = static_cast<int>(std::ceil(threshold / vals.front())) + 1;
  double best = std::numeric_limits<double>::infinity();
  brute_rec(vals, 0, cap, 0.0, threshold, &best);
  return best;
}

}  // namespace

TEST_CASE("geometric width of the named domains") {
  WidthResult wt = geometric_width(builtin_triangle());
  CHECK(std::abs(wt.value - 1.5) <= 1e-12);
  CHECK(norm(wt.direction) == doctest::Approx(1.0).epsilon(1e-14));

  WidthResult ws = geometric_width(builtin_square());
  CHECK(std::abs(ws.value - std::sqrt(2.0)) <= 1e-12);
  CHECK(ws.direction.x == 1.0);  // canonical representative of the tie
  CHECK(ws.direction.y == 0.0);

  // The two diagonal halves of the square, width 1 each.
  ConvexPolygon t1({{kR, -kR}, {kR, kR}, {-kR, kR}});
  ConvexPolygon t2({{kR, -kR}, {-kR, kR}, {-kR, -kR}});
  CHECK(std::abs(geometric_width(t1).value - 1.0) <= 1e-12);
  CHECK(std::abs(geometric_width(t2).value - 1.0) <= 1e-12);

  WidthResult wr = geometric_width(ConvexPolygon({{0, 0}, {2, 0}, {2, 1}, {0, 1}}));
  CHECK(wr.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(wr.direction.y) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("width is the minimum over all slab directions") {
  std::mt19937_64 rng(991u);
  std::uniform_real_distribution<double> ang(0.0, M_PI);
  for (int it = 0; it < 40; ++it) {
    ConvexPolygon poly = random_convex(rng);
    WidthResult w = geometric_width(poly);
    CHECK(std::abs(slab_width(poly, w.direction) - w.value) <= 1e-12);
    for (int k = 0; k < 100; ++k) {
      double a = ang(rng);
      CHECK(slab_width(poly, {std::cos(a), std::sin(a)}) >= w.value - 1e-12);
    }
  }
}

TEST_CASE("disjoint-piece lower bounds for the named partitions") {
  ConvexPolygon tri = builtin_triangle();
  Point2 a = tri.vertex(0), b = tri.vertex(1), c = tri.vertex(2);
  Point2 mab = tri.edge(0).midpoint(), mbc = tri.edge(1).midpoint(),
         mca = tri.edge(2).midpoint();

  std::vector<PartitionPiece> corners = {
      {ConvexPolygon({a, mab, mca}), 1},
      {ConvexPolygon({mab, b, mbc}), 1},
      {ConvexPolygon({mca, mbc, c}), 1},
  };
  PartitionBound pb = ls_lower_bound(tri, corners);
  CHECK(pb.total_p == 3);
  CHECK(pb.bound == doctest::Approx(2.25).epsilon(1e-13));

  corners.push_back({ConvexPolygon({mab, mbc, mca}), 1});
  pb = ls_lower_bound(tri, corners);
  CHECK(pb.total_p == 4);
  CHECK(pb.bound == doctest::Approx(3.0).epsilon(1e-13));
  REQUIRE(pb.piece_bounds.size() == 4);
  for (double v : pb.piece_bounds) CHECK(v == doctest::Approx(0.75).epsilon(1e-13));

  ConvexPolygon sq = builtin_square();
  std::vector<PartitionPiece> halves = {
      {ConvexPolygon({sq.vertex(0), sq.vertex(1), sq.vertex(3)}), 1},
      {ConvexPolygon({sq.vertex(1), sq.vertex(2), sq.vertex(3)}), 1},
  };
  pb = ls_lower_bound(sq, halves);
  CHECK(pb.bound == doctest::Approx(2.0).epsilon(1e-13));

  std::vector<PartitionPiece> quarters = {
      {ConvexPolygon({{0, 0}, {kR, 0}, {kR, kR}, {0, kR}}), 1},
      {ConvexPolygon({{-kR, 0}, {0, 0}, {0, kR}, {-kR, kR}}), 1},
      {ConvexPolygon({{-kR, -kR}, {0, -kR}, {0, 0}, {-kR, 0}}), 1},
  };
  pb = ls_lower_bound(sq, quarters);
  CHECK(pb.bound == doctest::Approx(3 * kR).epsilon(1e-13));
}

TEST_CASE("partition validation") {
  ConvexPolygon domain({{0, 0}, {4, 0}, {4, 4}, {0, 4}});
  auto box = [](double x0, double y0, double x1, double y1) {
    return ConvexPolygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
  };

  // A piece outside the domain.
  CHECK_THROWS_AS(ls_lower_bound(domain, {{box(3, 3, 5, 5), 1}}), PartitionError);
  // Overlapping pieces.
  CHECK_THROWS_AS(
      ls_lower_bound(domain, {{box(0, 0, 2, 2), 1}, {box(1, 1, 3, 3), 1}}),
      PartitionError);
  // Pieces sharing a boundary edge are fine.
  PartitionBound pb =
      ls_lower_bound(domain, {{box(0, 0, 2, 2), 1}, {box(2, 0, 4, 2), 1}});
  CHECK(pb.bound == doctest::Approx(4.0));
  // The default rule only covers p_j = 1.
  CHECK_THROWS_AS(ls_lower_bound(domain, {{box(0, 0, 2, 2), 2}}), std::exception);
  // A custom rule may assign anything.
  pb = ls_lower_bound(domain, {{box(0, 0, 2, 2), 3}},
                      [](const ConvexPolygon&, int p) { return 1.0 * p; });
  CHECK(pb.bound == doctest::Approx(3.0));
  CHECK(pb.total_p == 3);
}

TEST_CASE("length lattices match direct enumeration") {
  for (LatticeKind kind : {LatticeKind::Triangle, LatticeKind::Square}) {
    double cutoff = 12.0;
    LengthLattice lat = lattice_lengths(kind, cutoff);

    std::map<long long, double> oracle;
    for (int a = 0; a <= 20; ++a) {
      for (int b = 0; b <= a; ++b) {
        if (a == 0 && b == 0) continue;
        long long n = kind == LatticeKind::Triangle
                          ? 1LL * a * a + 1LL * a * b + 1LL * b * b
                          : 1LL * a * a + 1LL * b * b;
        double v = kind == LatticeKind::Triangle
                       ? 1.5 * std::sqrt(static_cast<double>(n))
                       : std::sqrt(2.0) * std::sqrt(static_cast<double>(n));
        if (v <= cutoff) oracle.emplace(n, v);
      }
    }
    REQUIRE(lat.values.size() == oracle.size());
    size_t i = 0;
    double prev = 0.0;
    for (const auto& [n, v] : oracle) {
      (void)n;
      CHECK(std::abs(lat.values[i].value - v) <= 1e-15);
      ++i;
    }
    for (const auto& lv : lat.values) {
      CHECK(lv.value >= prev);
      CHECK(lv.a >= lv.b);
      prev = lv.value;
    }
  }

  LengthLattice tri = lattice_lengths(LatticeKind::Triangle, 10.0);
  CHECK(tri.min_value() == doctest::Approx(1.5));
  CHECK(tri.values[1].value == doctest::Approx(1.5 * kSqrt3).epsilon(1e-14));
  CHECK(tri.values[2].value == doctest::Approx(3.0));

  LengthLattice sq = lattice_lengths(LatticeKind::Square, 10.0);
  CHECK(sq.min_value() == doctest::Approx(std::sqrt(2.0)));
  CHECK(sq.values[1].value == doctest::Approx(2.0));
  CHECK(sq.values[2].value == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("min_sum_at_least agrees with the unpruned oracle") {
  LengthLattice tri = lattice_lengths(LatticeKind::Triangle, 10.0);
  LengthLattice sq = lattice_lengths(LatticeKind::Square, 10.0);

  for (double theta = 0.3; theta <= 7.0; theta += 0.37) {
    CHECK(min_sum_at_least(tri, theta) == brute_min_sum(tri, theta));
    CHECK(min_sum_at_least(sq, theta) == brute_min_sum(sq, theta));
  }

  // The gap promotions used by the certificates.
  CHECK(std::abs(min_sum_at_least(tri, 2.25) - 1.5 * kSqrt3) <= 1e-12);
  CHECK(std::abs(min_sum_at_least(tri, 3.0) - 3.0) <= 1e-12);
  CHECK(std::abs(min_sum_at_least(sq, 3 * kR) - 2 * std::sqrt(2.0)) <= 1e-12);

  std::vector<double> multiset;
  double v = min_sum_at_least(tri, 2.25, &multiset);
  REQUIRE(multiset.size() == 1);
  CHECK(multiset[0] == v);

  // Thresholds below the minimum are met by the single smallest value.
  CHECK(min_sum_at_least(tri, 0.1) == doctest::Approx(1.5));

  // The exhaustiveness precondition is enforced.
  CHECK_THROWS_AS(min_sum_at_least(lattice_lengths(LatticeKind::Triangle, 3.0), 2.9),
                  std::invalid_argument);
}

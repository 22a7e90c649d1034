// Geometric widths, disjoint-piece lower bounds, and the billiard length
// lattices used to promote a crude lower bound to the next admissible length.
#pragma once

#include <functional>
#include <optional>

#include "pwidths/geom.hpp"

namespace pwidths {

struct PartitionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct WidthResult {
  double value = 0.0;
  Vec2 direction{};  // unit normal of a minimizing slab, canonical sign
  int edge = -1;     // edge of the polygon realizing the minimum
};

// Exact minimum slab width. A minimizing direction for a convex polygon is
// always normal to an edge, so scanning edge normals suffices. Ties prefer
// the lexicographically largest canonical direction.
WidthResult geometric_width(const ConvexPolygon& poly);

struct PartitionPiece {
  ConvexPolygon piece;
  int p = 1;
};

struct PartitionBound {
  double bound = 0.0;
  int total_p = 0;
  std::vector<double> piece_bounds;
};

// Lower bound from pairwise-disjoint convex pieces inside `domain`:
// sum of per-piece bounds at the assigned parameters, total_p = sum of p_j.
// The default rule requires p_j = 1 and uses the piece's slab width.
// Throws PartitionError if a piece leaves the domain or two pieces overlap
// with positive area.
using PieceRule = std::function<double(const ConvexPolygon&, int)>;
PartitionBound ls_lower_bound(const ConvexPolygon& domain,
                              const std::vector<PartitionPiece>& pieces,
                              const PieceRule& rule = {});

enum class LatticeKind { Triangle, Square };

struct LatticeValue {
  double value = 0.0;
  int a = 0;
  int b = 0;
  long long n = 0;  // value of the underlying quadratic form
};

// Admissible closed-trajectory lengths up to `cutoff`:
//   Triangle: (3/2) * sqrt(a^2 + a*b + b^2)
//   Square:   sqrt(2) * sqrt(a^2 + b^2)
// over integers a >= b >= 0, (a,b) != (0,0), deduplicated by the form value.
struct LengthLattice {
  LatticeKind kind = LatticeKind::Triangle;
  double cutoff = 0.0;
  std::vector<LatticeValue> values;  // ascending
  double min_value() const { return values.front().value; }
};

LengthLattice lattice_lengths(LatticeKind kind, double cutoff);

// Least total of a finite multiset of lattice values with total >= threshold.
// Multiset sizes up to ceil(threshold / min_value) + 1 are searched, which is
// exhaustive: any larger multiset exceeding the threshold has a sub-multiset
// that already does. Requires cutoff >= threshold + min_value, since an
// optimal multiset never contains a value that large.
double min_sum_at_least(const LengthLattice& lattice, double threshold);

// Same search, also reporting one optimal multiset (values, ascending).
double min_sum_at_least(const LengthLattice& lattice, double threshold,
                        std::vector<double>* multiset);

}  // namespace pwidths

#include "pwidths/widths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace pwidths {
namespace {

// Canonical sign for an undirected slab normal: x > 0, or x == 0 and y > 0.
Vec2 canonical_direction(Vec2 n) {
  if (n.x < 0.0 || (n.x == 0.0 && n.y < 0.0)) return -n;
  if (n.x == 0.0) n.x = 0.0;
  if (n.y == 0.0) n.y = 0.0;
  return n;
}

bool lex_less(Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

}  // namespace

WidthResult geometric_width(const ConvexPolygon& poly) {
  WidthResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < poly.size(); ++i) {
    Vec2 n = canonical_direction(poly.edge_outward_normal(i));
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& v : poly.vertices()) {
      double s = dot(n, v);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    double w = hi - lo;
    if (w < best.value ||
        (w == best.value && lex_less(best.direction, n))) {
      best.value = w;
      best.direction = n;
      best.edge = i;
    }
  }
  return best;
}

PartitionBound ls_lower_bound(const ConvexPolygon& domain,
                              const std::vector<PartitionPiece>& pieces,
                              const PieceRule& rule) {
  if (pieces.empty()) throw PartitionError("partition needs at least one piece");
  for (size_t i = 0; i < pieces.size(); ++i) {
    for (const auto& v : pieces[i].piece.vertices()) {
      if (!domain.contains(v, tol::kVertexSnap))
        throw PartitionError("piece vertex outside the domain");
    }
    if (pieces[i].p < 1) throw PartitionError("piece parameter must be positive");
    for (size_t j = i + 1; j < pieces.size(); ++j) {
      if (convex_intersection_area(pieces[i].piece, pieces[j].piece) > tol::kArea)
        throw PartitionError("pieces overlap with positive area");
    }
  }
  PartitionBound out;
  for (const auto& pc : pieces) {
    double b;
    if (rule) {
      b = rule(pc.piece, pc.p);
    } else {
      if (pc.p != 1)
        throw std::invalid_argument("default piece rule supports p_j = 1 only");
      b = geometric_width(pc.piece).value;
    }
    out.piece_bounds.push_back(b);
    out.bound += b;
    out.total_p += pc.p;
  }
  return out;
}

LengthLattice lattice_lengths(LatticeKind kind, double cutoff) {
  if (!(cutoff > 0.0)) throw std::invalid_argument("cutoff must be positive");
  LengthLattice out;
  out.kind = kind;
  out.cutoff = cutoff;
  std::map<long long, LatticeValue> by_form;
  // a >= b >= 0 covers every distinct form value; a alone bounds the value.
  int amax = kind == LatticeKind::Triangle
                 ? static_cast<int>(std::ceil(cutoff / 1.5)) + 1
                 : static_cast<int>(std::ceil(cutoff / std::sqrt(2.0))) + 1;
  for (int a = 1; a <= amax; ++a) {
    for (int b = 0; b <= a; ++b) {
      long long n = kind == LatticeKind::Triangle
                        ? 1LL * a * a + 1LL * a * b + 1LL * b * b
                        : 1LL * a * a + 1LL * b * b;
      double value = kind == LatticeKind::Triangle
                         ? 1.5 * std::sqrt(static_cast<double>(n))
                         : std::sqrt(2.0) * std::sqrt(static_cast<double>(n));
      if (value > cutoff) continue;
      auto it = by_form.find(n);
      if (it == by_form.end()) by_form.emplace(n, LatticeValue{value, a, b, n});
    }
  }
  if (by_form.empty())
    throw std::invalid_argument("cutoff below the smallest lattice value");
  for (const auto& [n, lv] : by_form) out.values.push_back(lv);
  return out;
}

namespace {

void min_sum_search(const std::vector<LatticeValue>& values, double threshold,
                    size_t from, int remaining, double partial,
                    std::vector<double>& stack, double& best,
                    std::vector<double>* best_set) {
  if (partial >= threshold) {
    if (partial < best) {
      best = partial;
      if (best_set) *best_set = stack;
    }
    return;
  }
  if (remaining == 0) return;
  for (size_t i = from; i < values.size(); ++i) {
    double next = partial + values[i].value;
    if (next >= best) break;  // values ascend; larger choices only get worse
    stack.push_back(values[i].value);
    min_sum_search(values, threshold, i, remaining - 1, next, stack, best, best_set);
    stack.pop_back();
  }
}

}  // namespace

double min_sum_at_least(const LengthLattice& lattice, double threshold,
                        std::vector<double>* multiset) {
  if (!(threshold > 0.0)) throw std::invalid_argument("threshold must be positive");
  double vmin = lattice.min_value();
  // Any optimal multiset sums below threshold + vmin, so all of its members
  // are below that too; the lattice must extend at least that far.
  if (lattice.cutoff + 1e-12 < threshold + vmin)
    throw std::invalid_argument("lattice cutoff too small for an exhaustive search");
  int cap = static_cast<int>(std::ceil(threshold / vmin)) + 1;
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> stack;
  min_sum_search(lattice.values, threshold, 0, cap, 0.0, stack, best, multiset);
  return best;
}

double min_sum_at_least(const LengthLattice& lattice, double threshold) {
  return min_sum_at_least(lattice, threshold, nullptr);
}

}  // namespace pwidths

#include "pwidths/domains.hpp"

namespace pwidths {

ConvexPolygon builtin_triangle() {
  double s = std::sqrt(3.0);
  return ConvexPolygon({{0.0, 0.0}, {s, 0.0}, {0.5 * s, 1.5}});
}

ConvexPolygon builtin_square() {
  double r = std::sqrt(2.0) / 2.0;
  return ConvexPolygon({{r, -r}, {r, r}, {-r, r}, {-r, -r}});
}

Tetrahedron builtin_tetrahedron() { return Tetrahedron::regular(std::sqrt(3.0) / 2.0); }

}  // namespace pwidths

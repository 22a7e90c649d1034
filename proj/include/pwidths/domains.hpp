// Built-in domains used across the tool suite.
#pragma once

#include "pwidths/geom.hpp"

namespace pwidths {

// Equilateral triangle inscribed in the unit circle, translated so
// A = (0,0), B = (sqrt(3),0), C = (sqrt(3)/2, 3/2).
ConvexPolygon builtin_triangle();

// Square inscribed in the unit circle: vertices (+-sqrt(2)/2, +-sqrt(2)/2),
// counterclockwise from the bottom-right corner.
ConvexPolygon builtin_square();

// Regular tetrahedron of side sqrt(3)/2, centered at the origin.
Tetrahedron builtin_tetrahedron();

}  // namespace pwidths

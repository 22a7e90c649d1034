// JSON input for geometry. Coordinates may be plain numbers or exact
// arithmetic expressions such as "sqrt(3)/2", so inputs stay radical-precise.
#pragma once

#include <string_view>

#include "pwidths/geom.hpp"
#include "json.hpp"

namespace pwidths {

struct InputParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Grammar: integers and decimals, sqrt(...), parentheses, unary minus,
// and the four arithmetic operators with the usual precedence.
double eval_number_expr(std::string_view text);

// Accepts a JSON number or an expression string.
double number_from_json(const nlohmann::json& j);

// {"vertices": [[x, y], ...]} counterclockwise.
ConvexPolygon polygon_from_json(const nlohmann::json& j);

// {"vertices3": [[x, y, z], ...]} with exactly four entries.
Tetrahedron tetrahedron_from_json(const nlohmann::json& j);

nlohmann::json polygon_to_json(const ConvexPolygon& poly);

}  // namespace pwidths

#include "pwidths/geom_io.hpp"

#include <cctype>
#include <cstdlib>

namespace pwidths {
namespace {

// Recursive-descent evaluator over: expr := term (('+'|'-') term)*;
// term := factor (('*'|'/') factor)*; factor := ['-'] atom;
// atom := number | 'sqrt' '(' expr ')' | '(' expr ')'.
class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  double parse() {
    double v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters");
    return v;
  }

 private:
  double expr() {
    double v = term();
    for (;;) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        v += term();
      } else if (peek() == '-') {
        ++pos_;
        v -= term();
      } else {
        return v;
      }
    }
  }

  double term() {
    double v = factor();
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        v *= factor();
      } else if (peek() == '/') {
        ++pos_;
        double d = factor();
        if (d == 0.0) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }

  double factor() {
    skip_ws();
    if (peek() == '-') {
      ++pos_;
      return -factor();
    }
    return atom();
  }

  double atom() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      double v = expr();
      expect(')');
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      std::string_view name = s_.substr(start, pos_ - start);
      if (name != "sqrt") fail("unknown function");
      expect('(');
      double v = expr();
      expect(')');
      if (v < 0.0) fail("sqrt of negative value");
      return std::sqrt(v);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
        ++pos_;
      std::string num(s_.substr(start, pos_ - start));
      char* end = nullptr;
      double v = std::strtod(num.c_str(), &end);
      if (end != num.c_str() + num.size()) fail("malformed number");
      return v;
    }
    fail("unexpected character");
    return 0.0;
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip_ws();
    if (peek() != c) fail("expected delimiter");
    ++pos_;
  }
  [[noreturn]] void fail(const char* what) {
    throw InputParseError(std::string("expression error: ") + what + " in \"" +
                          std::string(s_) + "\"");
  }

  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace

double eval_number_expr(std::string_view text) { return ExprParser(text).parse(); }

double number_from_json(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return eval_number_expr(j.get<std::string>());
  throw InputParseError("coordinate must be a number or expression string");
}

ConvexPolygon polygon_from_json(const nlohmann::json& j) {
  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw InputParseError("expected object with a \"vertices\" array");
  std::vector<Point2> pts;
  for (const auto& row : j["vertices"]) {
    if (!row.is_array() || row.size() != 2)
      throw InputParseError("each vertex must be a pair [x, y]");
    pts.push_back({number_from_json(row[0]), number_from_json(row[1])});
  }
  try {
    return ConvexPolygon(std::move(pts));
  } catch (const InvalidPolygonError& e) {
    throw InputParseError(std::string("invalid polygon: ") + e.what());
  }
}

Tetrahedron tetrahedron_from_json(const nlohmann::json& j) {
  if (!j.contains("vertices3") || !j["vertices3"].is_array() ||
      j["vertices3"].size() != 4)
    throw InputParseError("expected object with a 4-entry \"vertices3\" array");
  Tetrahedron tet{};
  for (int i = 0; i < 4; ++i) {
    const auto& row = j["vertices3"][i];
    if (!row.is_array() || row.size() != 3)
      throw InputParseError("each vertex must be a triple [x, y, z]");
    tet.v[i] = {number_from_json(row[0]), number_from_json(row[1]),
                number_from_json(row[2])};
  }
  return tet;
}

nlohmann::json polygon_to_json(const ConvexPolygon& poly) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : poly.vertices()) arr.push_back({p.x, p.y});
  return nlohmann::json{{"vertices", arr}};
}

}  // namespace pwidths

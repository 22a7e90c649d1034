#include "pwidths/svg.hpp"

#include <cstdio>
#include <sstream>

namespace pwidths {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

SvgFigure::SvgFigure(double x0, double y0, double x1, double y1, double px_per_unit)
    : x0_(x0), y0_(y0), x1_(x1), y1_(y1), scale_(px_per_unit) {}

Point2 SvgFigure::to_px(Point2 p) const {
  return {margin_ + (p.x - x0_) * scale_, margin_ + (y1_ - p.y) * scale_};
}

void SvgFigure::add_comment(const std::string& text) {
  body_ += "<!-- " + text + " -->\n";
}

void SvgFigure::add_polygon(const std::vector<Point2>& ring, const std::string& stroke,
                            const std::string& fill) {
  body_ += "<polygon points=\"";
  for (size_t i = 0; i < ring.size(); ++i) {
    Point2 q = to_px(ring[i]);
    body_ += (i ? " " : "") + num(q.x) + "," + num(q.y);
  }
  body_ += "\" fill=\"" + fill + "\" stroke=\"" + stroke + "\" stroke-width=\"1.5\"/>\n";
}

void SvgFigure::add_polyline(const std::vector<Point2>& pts, const std::string& stroke,
                             double width_px) {
  body_ += "<polyline points=\"";
  for (size_t i = 0; i < pts.size(); ++i) {
    Point2 q = to_px(pts[i]);
    body_ += (i ? " " : "") + num(q.x) + "," + num(q.y);
  }
  body_ += "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" +
           num(width_px) + "\"/>\n";
}

void SvgFigure::add_circle(Point2 center, double radius_px, const std::string& fill) {
  Point2 q = to_px(center);
  body_ += "<circle cx=\"" + num(q.x) + "\" cy=\"" + num(q.y) + "\" r=\"" +
           num(radius_px) + "\" fill=\"" + fill + "\"/>\n";
}

std::string SvgFigure::str() const {
  double w = (x1_ - x0_) * scale_ + 2.0 * margin_;
  double h = (y1_ - y0_) * scale_ + 2.0 * margin_;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w)
     << "\" height=\"" << num(h) << "\" viewBox=\"0 0 " << num(w) << ' ' << num(h)
     << "\">\n"
     << body_ << "</svg>\n";
  return os.str();
}

SvgFigure figure_for(const ConvexPolygon& poly, double px_per_unit) {
  double x0 = poly.vertex(0).x, x1 = x0, y0 = poly.vertex(0).y, y1 = y0;
  for (const auto& v : poly.vertices()) {
    x0 = std::min(x0, v.x);
    x1 = std::max(x1, v.x);
    y0 = std::min(y0, v.y);
    y1 = std::max(y1, v.y);
  }
  double pad = 0.08 * std::max(x1 - x0, y1 - y0);
  return SvgFigure(x0 - pad, y0 - pad, x1 + pad, y1 + pad, px_per_unit);
}

}  // namespace pwidths

// Minimal SVG emitter for trajectory and chain figures.
#pragma once

#include <string>

#include "pwidths/geom.hpp"

namespace pwidths {

class SvgFigure {
 public:
  // World-coordinate bounding box; y is flipped so world y points up.
  SvgFigure(double x0, double y0, double x1, double y1, double px_per_unit = 200.0);

  void add_comment(const std::string& text);
  void add_polygon(const std::vector<Point2>& ring, const std::string& stroke,
                   const std::string& fill = "none");
  void add_polyline(const std::vector<Point2>& pts, const std::string& stroke,
                    double width_px = 1.5);
  void add_circle(Point2 center, double radius_px, const std::string& fill);

  std::string str() const;

 private:
  Point2 to_px(Point2 p) const;
  double x0_, y0_, x1_, y1_, scale_, margin_ = 12.0;
  std::string body_;
};

// Bounding box of a polygon with a small world-space margin.
SvgFigure figure_for(const ConvexPolygon& poly, double px_per_unit = 200.0);

}  // namespace pwidths

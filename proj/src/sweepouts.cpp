#include "pwidths/sweepouts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pwidths/widths.hpp"

namespace pwidths {
namespace {

// ---------------------------------------------------------------- phi chains

struct EdgePair {
  int e0 = -1;
  int e1 = -1;
};

EdgePair incident_edges(const ConvexPolygon& poly, BoundaryFeature f) {
  int n = poly.size();
  if (f.at_vertex) return {(f.index + n - 1) % n, f.index};
  return {f.index, -1};
}

bool share_edge(EdgePair a, EdgePair b) {
  return (a.e0 >= 0 && (a.e0 == b.e0 || a.e0 == b.e1)) ||
         (a.e1 >= 0 && (a.e1 == b.e0 || a.e1 == b.e1));
}

Line2 boundary_perpendicular(const ConvexPolygon& poly, Point2 p, int edge) {
  return Line2::point_dir(p, poly.edge_outward_normal(edge));
}

// Chain of phi(p1, p2) as at most two segments; returns the count.
int phi_segments(const ConvexPolygon& tri, Point2 p1, Point2 p2,
                 std::array<Segment2, 2>& out) {
  BoundaryFeature f1 = tri.classify_boundary(p1);
  BoundaryFeature f2 = tri.classify_boundary(p2);
  if (share_edge(incident_edges(tri, f1), incident_edges(tri, f2))) return 0;

  if (f1.at_vertex || f2.at_vertex) {
    // Two distinct vertices always share an edge, so exactly one is a vertex:
    // the chain is the full perpendicular chord through the other point.
    BoundaryFeature fe = f1.at_vertex ? f2 : f1;
    Point2 pe = f1.at_vertex ? p2 : p1;
    Chord ch = polygon_chord(tri, boundary_perpendicular(tri, pe, fe.index));
    if (ch.kind != ChordKind::Segment) return 0;
    out[0] = ch.seg;
    return 1;
  }

  Line2 l1 = boundary_perpendicular(tri, p1, f1.index);
  Line2 l2 = boundary_perpendicular(tri, p2, f2.index);
  Point2 cross_pt;
  if (!lines_intersect(l1, l2, &cross_pt)) return 0;  // parallel edges: not a triangle
  int count = 0;
  const Point2 from[2] = {p1, p2};
  for (int i = 0; i < 2; ++i) {
    Segment2 clipped;
    if (clip_segment(tri, {from[i], cross_pt}, &clipped) && clipped.length() > 1e-14)
      out[count++] = clipped;
  }
  return count;
}

void require_triangle(const ConvexPolygon& tri) {
  if (tri.size() != 3)
    throw std::invalid_argument("phi chains are defined on triangles");
}

double phi_value(const ConvexPolygon& tri, Point2 p1, Point2 p2) {
  std::array<Segment2, 2> segs;
  int k = phi_segments(tri, p1, p2, segs);
  double m = 0.0;
  for (int i = 0; i < k; ++i) m += segs[i].length();
  return m;
}

// Mod-2 combination of up to four collinear-cancelling segments.
double mod2_mass(const Segment2* segs, int count,
                 std::vector<std::vector<Point2>>* sink) {
  std::array<Line2, 4> lines;
  std::array<bool, 4> used{};
  for (int i = 0; i < count; ++i) lines[i] = Line2::through(segs[i].a, segs[i].b);

  double total = 0.0;
  for (int i = 0; i < count; ++i) {
    if (used[i]) continue;
    // Collect the group of segments collinear with segs[i].
    Vec2 u = normalized(segs[i].b - segs[i].a);
    Point2 base = segs[i].a;
    std::array<std::pair<double, double>, 4> spans;
    int nspan = 0;
    for (int j = i; j < count; ++j) {
      if (used[j] || !same_line(lines[i], lines[j])) continue;
      used[j] = true;
      double s0 = dot(u, segs[j].a - base);
      double s1 = dot(u, segs[j].b - base);
      spans[nspan++] = {std::min(s0, s1), std::max(s0, s1)};
    }
    // Parity sweep over the span endpoints.
    std::array<std::pair<double, int>, 8> events;
    int ne = 0;
    for (int j = 0; j < nspan; ++j) {
      events[ne++] = {spans[j].first, +1};
      events[ne++] = {spans[j].second, -1};
    }
    std::sort(events.begin(), events.begin() + ne);
    int depth = 0;
    double prev = 0.0;
    for (int j = 0; j < ne; ++j) {
      if (depth % 2 == 1 && events[j].first > prev) {
        total += events[j].first - prev;
        if (sink)
          sink->push_back({base + prev * u, base + events[j].first * u});
      }
      prev = events[j].first;
      depth += events[j].second;
    }
  }
  return total;
}

double pair_phi_value(const ConvexPolygon& tri, Point2 x1, Point2 x2, Point2 y1,
                      Point2 y2, std::vector<std::vector<Point2>>* sink) {
  std::array<Segment2, 2> sx, sy;
  int kx = phi_segments(tri, x1, x2, sx);
  int ky = phi_segments(tri, y1, y2, sy);
  std::array<Segment2, 4> all;
  int n = 0;
  for (int i = 0; i < kx; ++i) all[n++] = sx[i];
  for (int i = 0; i < ky; ++i) all[n++] = sy[i];
  return mod2_mass(all.data(), n, sink);
}

// ------------------------------------------------------------- square boxes

struct SquareBox {
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
};

SquareBox square_box(const ConvexPolygon& square) {
  if (square.size() != 4)
    throw std::invalid_argument("hyperbola chains require an axis-aligned square");
  for (int i = 0; i < 4; ++i) {
    Segment2 e = square.edge(i);
    if (std::abs(e.b.x - e.a.x) > 1e-12 && std::abs(e.b.y - e.a.y) > 1e-12)
      throw std::invalid_argument("hyperbola chains require an axis-aligned square");
  }
  SquareBox b;
  b.x0 = b.x1 = square.vertex(0).x;
  b.y0 = b.y1 = square.vertex(0).y;
  for (const auto& v : square.vertices()) {
    b.x0 = std::min(b.x0, v.x);
    b.x1 = std::max(b.x1, v.x);
    b.y0 = std::min(b.y0, v.y);
    b.y1 = std::max(b.y1, v.y);
  }
  return b;
}

// --------------------------------------------------------------- quadrature

double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double eps,
                   int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double s2 = left + right;
  // The relative floor stops the recursion once the halved target drops below
  // rounding noise; otherwise sharp features (nearly degenerate conics) force
  // full-depth trees that never satisfy an absolute tolerance.
  double accept = 15.0 * std::max(eps, 1e-15 * std::abs(s2));
  if (depth <= 0 || std::abs(s2 - whole) <= accept)
    return s2 + (s2 - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double eps) {
  if (!(b > a)) return 0.0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, eps, 48);
}

// ------------------------------------------------------- hyperbola branches

// Arc length of the branch of w z = K between |w| = p and |w| = q, in the
// scaled coordinates w = a x + c, z = a y + b (lengths divide by |a|). The
// substitution |w| = sqrt|K| e^t turns the length element into
// (sqrt|K|/|a|) sqrt(e^{2t} + e^{-2t}) dt, whose corner feature sits at t = 0
// with unit width for every K. A fixed-variable chart cannot do this: as the
// conic degenerates the feature shrinks like sqrt|K| and eventually falls
// below the spacing of representable abscissae.
double branch_arc_length(double abs_a, double K, double p, double q) {
  if (!(p > 0.0) || !(q > p)) return 0.0;
  double r = std::sqrt(std::abs(K));
  double t1 = std::log(p / r), t2 = std::log(q / r);
  double integral = adaptive_simpson(
      [](double t) {
        double at = std::abs(t);
        return std::exp(at) * std::sqrt(1.0 + std::exp(-4.0 * at));
      },
      t1, t2, 0.25 * tol::kQuadrature * abs_a / r);
  return r / abs_a * integral;
}

void emit_branch_polyline(double a, double b, double c, double K, double sgn,
                          double p, double q,
                          std::vector<std::vector<Point2>>* sink) {
  if (!sink) return;
  std::vector<Point2> pts;
  const int kSamples = 49;
  double r = std::sqrt(std::abs(K));
  double t1 = std::log(p / r), t2 = std::log(q / r);
  for (int i = 0; i < kSamples; ++i) {
    double w = sgn * r * std::exp(t1 + (t2 - t1) * i / (kSamples - 1));
    pts.push_back({(w - c) / a, (K / w - b) / a});
  }
  sink->push_back(std::move(pts));
}

double chord_mass(const ConvexPolygon& poly, const Line2& line,
                  std::vector<std::vector<Point2>>* sink) {
  Chord ch = polygon_chord(poly, line);
  if (ch.kind != ChordKind::Segment) return 0.0;
  if (sink) sink->push_back({ch.seg.a, ch.seg.b});
  return ch.seg.length();
}

double hyperbola_mass_core(const ConvexPolygon& square, const SquareBox& box,
                           const std::array<double, 4>& coeffs,
                           std::vector<std::vector<Point2>>* sink) {
  const double a = coeffs[0], b = coeffs[1], c = coeffs[2], d = coeffs[3];
  double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (scale == 0.0) return 0.0;

  if (std::abs(a) <= 1e-14 * scale) {
    // Pure line b x + c y + d = 0; nothing at all if (b,c) also vanishes.
    if (std::hypot(b, c) <= 1e-14 * scale) return 0.0;
    return chord_mass(square, Line2::from_coeffs(b, c, d), sink);
  }

  double K = c * b - a * d;  // the conic is (a x + c)(a y + b) = K, scaled by a
  if (K == 0.0) {
    // Two axis-parallel lines through the center (-c/a, -b/a).
    double m = chord_mass(square, Line2::from_coeffs(1.0, 0.0, c / a), sink);
    m += chord_mass(square, Line2::from_coeffs(0.0, 1.0, b / a), sink);
    return m;
  }

  // Clip each branch in w = a x + c, z = a y + b, where the box becomes
  // [wx_lo, wx_hi] x [z_lo, z_hi] and a branch (fixed sign of w) meets it in
  // a single interval of |w|. These bounds stay well conditioned however
  // small K gets; cutting at the x-positions of the y-crossings does not,
  // since those collapse onto the pole at rounding scale.
  double wxa = a * box.x0 + c, wxb = a * box.x1 + c;
  double wx_lo = std::min(wxa, wxb), wx_hi = std::max(wxa, wxb);
  double za = a * box.y0 + b, zb = a * box.y1 + b;
  double z_lo = std::min(za, zb), z_hi = std::max(za, zb);

  double abs_k = std::abs(K);
  double inf = std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (double sgn : {1.0, -1.0}) {
    double lo = std::max(sgn > 0 ? wx_lo : -wx_hi, 0.0);
    double hi = sgn > 0 ? wx_hi : -wx_lo;
    // z = K / w keeps the sign sgn * sign(K) along this branch, so exactly
    // one z-bound caps |z| from above and the other binds only if it has
    // that same sign.
    bool zpos = (K > 0.0) == (sgn > 0.0);
    double zcap = zpos ? z_hi : -z_lo;
    double zfar = zpos ? z_lo : -z_hi;
    if (!(zcap > 0.0)) continue;
    double p = std::max(lo, abs_k / zcap);
    double q = std::min(hi, zfar > 0.0 ? abs_k / zfar : inf);
    if (!(q > p)) continue;
    total += branch_arc_length(std::abs(a), K, p, q);
    emit_branch_polyline(a, b, c, K, sgn, p, q, sink);
  }
  return total;
}

}  // namespace

ChainMass phi_mass(const ConvexPolygon& tri, Point2 p1, Point2 p2) {
  require_triangle(tri);
  std::array<Segment2, 2> segs;
  int k = phi_segments(tri, p1, p2, segs);
  ChainMass out;
  for (int i = 0; i < k; ++i) {
    out.mass += segs[i].length();
    out.pieces.push_back({segs[i].a, segs[i].b});
  }
  return out;
}

ChainMass line_sweepout_mass(const ConvexPolygon& poly, const Line2& line) {
  ChainMass out;
  out.mass = chord_mass(poly, line, &out.pieces);
  return out;
}

ChainMass hyperbola_sweepout_mass(const ConvexPolygon& square,
                                  const std::array<double, 4>& coeffs) {
  SquareBox box = square_box(square);
  ChainMass out;
  out.mass = hyperbola_mass_core(square, box, coeffs, &out.pieces);
  return out;
}

MonotoneCheck monotone_graph_bound_check(std::span<const Point2> samples) {
  if (samples.size() < 2)
    throw MonotoneSampleError("need at least two samples");
  bool up = true, down = true;
  for (size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].x < samples[i - 1].x - 1e-12)
      throw MonotoneSampleError("x samples must be nondecreasing");
    double dy = samples[i].y - samples[i - 1].y;
    if (dy < -1e-12) up = false;
    if (dy > 1e-12) down = false;
  }
  if (!up && !down) throw MonotoneSampleError("y samples must be monotone");
  double yfirst = samples.front().y, ylast = samples.back().y;

  MonotoneCheck out;
  for (size_t i = 1; i < samples.size(); ++i)
    out.polyline_length += dist(samples[i - 1], samples[i]);
  out.bound = (samples.back().x - samples.front().x) + std::abs(ylast - yfirst);
  out.ok = out.polyline_length <= out.bound + 1e-9;
  return out;
}

double plane_sweepout_mass(const Tetrahedron& tet, const Plane3& plane,
                           bool* contains_face) {
  PlaneSection sec = plane_tetrahedron_section(tet, plane);
  if (contains_face) *contains_face = sec.kind == SectionKind::ContainsFace;
  return sec.perimeter();
}

ChainMass pair_phi_mass(const ConvexPolygon& tri, Point2 x1, Point2 x2, Point2 y1,
                        Point2 y2) {
  require_triangle(tri);
  ChainMass out;
  out.mass = pair_phi_value(tri, x1, x2, y1, y2, &out.pieces);
  return out;
}

// ------------------------------------------------------------------ families

namespace {

// Chart values like cos(pi/2) miss zero by ~6e-17, which would keep exactly
// degenerate members (axis-parallel chord pairs, lines through the origin)
// off the sample grid; snap them so chart gridlines mean what they say.
double snap_coeff(double v) { return std::abs(v) <= 1e-15 ? 0.0 : v; }

}  // namespace

bool line_from_projective(double phi1, double phi2, Line2* out) {
  double a = snap_coeff(std::sin(phi2) * std::cos(phi1));
  double b = snap_coeff(std::sin(phi2) * std::sin(phi1));
  double c = snap_coeff(std::cos(phi2));
  if (std::hypot(a, b) < 1e-12) return false;
  *out = Line2::from_coeffs(a, b, c);
  return true;
}

std::array<double, 4> projective4(double phi, double theta, double psi) {
  double sp = std::sin(psi);
  return {snap_coeff(sp * std::sin(theta) * std::cos(phi)),
          snap_coeff(sp * std::sin(theta) * std::sin(phi)),
          snap_coeff(sp * std::cos(theta)), snap_coeff(std::cos(psi))};
}

Family make_phi_family(const ConvexPolygon& tri) {
  require_triangle(tri);
  Family fam;
  fam.name = "phi-T";
  fam.dim = 2;
  double per = tri.perimeter();
  fam.axes = {{0.0, per, true}, {0.0, per, true}};
  fam.bound = geometric_width(tri).value;
  fam.default_grid = 512;
  fam.mass = [tri](const double* t) {
    return phi_value(tri, tri.boundary_point(t[0]), tri.boundary_point(t[1]));
  };
  return fam;
}

Family make_pair_phi_family(const ConvexPolygon& tri) {
  require_triangle(tri);
  Family fam;
  fam.name = "pair-phi-T";
  fam.dim = 4;
  double per = tri.perimeter();
  fam.axes = std::vector<AxisSpec>(4, {0.0, per, true});
  fam.bound = 2.0 * geometric_width(tri).value;
  fam.default_grid = 48;
  fam.mass = [tri](const double* t) {
    return pair_phi_value(tri, tri.boundary_point(t[0]), tri.boundary_point(t[1]),
                          tri.boundary_point(t[2]), tri.boundary_point(t[3]), nullptr);
  };
  return fam;
}

Family make_line_family(const ConvexPolygon& poly, double bound) {
  Family fam;
  fam.name = "lines-P";
  fam.dim = 2;
  fam.axes = {{0.0, 2.0 * std::acos(-1.0), true}, {0.0, 0.5 * std::acos(-1.0), false}};
  fam.bound = bound;
  fam.default_grid = 64;
  fam.mass = [poly](const double* t) {
    Line2 line;
    if (!line_from_projective(t[0], t[1], &line)) return 0.0;  // line at infinity
    Chord ch = polygon_chord(poly, line);
    return ch.kind == ChordKind::Segment ? ch.seg.length() : 0.0;
  };
  return fam;
}

Family make_hyperbola_family(const ConvexPolygon& square) {
  SquareBox box = square_box(square);
  Family fam;
  fam.name = "hyperbola-S";
  fam.dim = 3;
  double pi = std::acos(-1.0);
  fam.axes = {{0.0, 2.0 * pi, true}, {0.0, pi, false}, {0.0, 0.5 * pi, false}};
  fam.bound = (box.x1 - box.x0) + (box.y1 - box.y0);
  fam.default_grid = 64;
  fam.mass = [square, box](const double* t) {
    return hyperbola_mass_core(square, box, projective4(t[0], t[1], t[2]), nullptr);
  };
  return fam;
}

Family make_plane_family(const Tetrahedron& tet) {
  Family fam;
  fam.name = "planes-tet";
  fam.dim = 3;
  double pi = std::acos(-1.0);
  fam.axes = {{0.0, 2.0 * pi, true}, {0.0, pi, false}, {0.0, 0.5 * pi, false}};
  fam.bound = 3.0 * tet.edge_length();
  fam.default_grid = 64;
  fam.mass = [tet](const double* t) {
    auto [a, b, c, d] = projective4(t[0], t[1], t[2]);
    if (std::sqrt(a * a + b * b + c * c) < 1e-12) return -1.0;  // no plane
    bool face = false;
    double m = plane_sweepout_mass(tet, Plane3::from_coeffs(a, b, c, d), &face);
    return face ? -1.0 : m;  // the family excludes face-containing planes
  };
  return fam;
}

// ----------------------------------------------------------------- maximizer

namespace {

struct BestPoint {
  double value = -std::numeric_limits<double>::infinity();
  std::vector<double> params;
};

void wrap_or_clamp(const AxisSpec& ax, double* x) {
  if (ax.periodic) {
    double span = ax.hi - ax.lo;
    *x = std::fmod(*x - ax.lo, span);
    if (*x < 0.0) *x += span;
    *x += ax.lo;
  } else {
    *x = std::clamp(*x, ax.lo, ax.hi);
  }
}

}  // namespace

MaximizerReport maximize_mass(const Family& family, const GridSpec& spec,
                              const std::function<void(const double*, double)>& sink) {
  if (family.dim < 1 || family.dim > 4)
    throw std::invalid_argument("family dimension must be between 1 and 4");
  int n = spec.grid > 0 ? spec.grid : family.default_grid;

  MaximizerReport report;
  report.family = family.name;
  report.bound = family.bound;
  report.grid = n;
  report.refine_rounds = spec.refine_rounds;

  std::vector<int> counts(family.dim);
  std::vector<double> spacing(family.dim);
  for (int d = 0; d < family.dim; ++d) {
    const AxisSpec& ax = family.axes[d];
    counts[d] = ax.periodic ? n : n + 1;
    spacing[d] = (ax.hi - ax.lo) / n;
  }

  // Coarse pass in lexicographic index order; ties keep the first point.
  std::vector<BestPoint> top;
  std::vector<int> idx(family.dim, 0);
  std::vector<double> params(family.dim);
  for (;;) {
    for (int d = 0; d < family.dim; ++d)
      params[d] = family.axes[d].lo + spacing[d] * idx[d];
    double m = family.mass(params.data());
    ++report.samples;
    if (sink) sink(params.data(), m);

    size_t pos = top.size();
    while (pos > 0 && top[pos - 1].value < m) --pos;
    if (pos < static_cast<size_t>(spec.top_k)) {
      top.insert(top.begin() + pos, {m, params});
      if (top.size() > static_cast<size_t>(spec.top_k)) top.pop_back();
    }

    int d = family.dim - 1;
    while (d >= 0 && ++idx[d] == counts[d]) idx[d--] = 0;
    if (d < 0) break;
  }

  // Shrinking-window refinement around each seed; the window keeps the seed,
  // so the running best never regresses.
  BestPoint best = top.front();
  int rp = std::max(3, spec.refine_points);
  for (const auto& seed : top) {
    BestPoint cur = seed;
    std::vector<double> w = spacing;
    for (int round = 0; round < spec.refine_rounds; ++round) {
      BestPoint round_best = cur;
      std::vector<int> j(family.dim, 0);
      std::vector<double> cand(family.dim);
      for (;;) {
        for (int d = 0; d < family.dim; ++d) {
          cand[d] = cur.params[d] - w[d] + 2.0 * w[d] * j[d] / (rp - 1);
          wrap_or_clamp(family.axes[d], &cand[d]);
        }
        double m = family.mass(cand.data());
        ++report.samples;
        if (m > round_best.value) round_best = {m, cand};

        int d = family.dim - 1;
        while (d >= 0 && ++j[d] == rp) j[d--] = 0;
        if (d < 0) break;
      }
      cur = round_best;
      for (double& wd : w) wd *= spec.shrink;
    }
    if (cur.value > best.value) best = cur;
  }

  // Re-evaluate so the reported value is exactly the mass at the argmax.
  report.best = family.mass(best.params.data());
  ++report.samples;
  report.argmax = best.params;
  return report;
}

MaximizerReport maximize_mass(const Family& family, const GridSpec& spec) {
  return maximize_mass(family, spec, nullptr);
}

}  // namespace pwidths

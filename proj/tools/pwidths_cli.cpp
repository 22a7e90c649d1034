// Command-line front end: width, billiard, sweep-max, lattice, certify, and
// reproduce-all, with JSON/CSV/SVG artifacts.
//
// Exit codes: 0 success, 2 input or parse error, 3 bounds do not meet,
// 4 trajectory budget exhausted.
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pwidths/billiards.hpp"
#include "pwidths/certify.hpp"
#include "pwidths/domains.hpp"
#include "pwidths/geom_io.hpp"
#include "pwidths/svg.hpp"

namespace {

using nlohmann::json;
using namespace pwidths;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitBounds = 3;
constexpr int kExitBudget = 4;

struct CommonOpts {
  std::string domain;
  std::string input;
  std::string out_dir;
  std::string format = "json";
  bool seedless = false;
};

std::set<std::string> formats_of(const CommonOpts& c) {
  std::set<std::string> out;
  std::stringstream ss(c.format);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.insert(item);
  }
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputParseError("cannot open input file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputParseError(std::string("invalid JSON: ") + e.what());
  }
  return j;
}

ConvexPolygon resolve_polygon(const CommonOpts& c, const std::string& fallback) {
  std::string dom = c.domain.empty() && c.input.empty() ? fallback : c.domain;
  if (!c.input.empty()) return polygon_from_json(load_json_file(c.input));
  if (dom == "T") return builtin_triangle();
  if (dom == "S") return builtin_square();
  throw InputParseError("unknown domain \"" + dom + "\" (use T, S, or --input)");
}

void write_file(const std::string& dir, const std::string& name,
                const std::string& content) {
  std::filesystem::create_directories(dir);
  std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
  out << content;
}

void stamp(SvgFigure& fig, bool seedless) {
  if (seedless) return;
  std::time_t now = std::time(nullptr);
  char buf[64];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  fig.add_comment(std::string("generated ") + buf);
}

Point2 vertex_by_letter(const ConvexPolygon& poly, char ch) {
  int i = ch - 'A';
  if (i < 0 || i >= poly.size())
    throw InputParseError(std::string("vertex \"") + ch + "\" is out of range");
  return poly.vertex(i);
}

// Accepts "x,y" with expression coordinates, a vertex letter ("A"), or
// "mid:AB" for the midpoint of two named vertices.
Point2 parse_point(const std::string& text, const ConvexPolygon& poly) {
  if (text.rfind("mid:", 0) == 0) {
    std::string v = text.substr(4);
    if (v.size() != 2)
      throw InputParseError("expected two vertex letters after \"mid:\"");
    Point2 a = vertex_by_letter(poly, v[0]);
    Point2 b = vertex_by_letter(poly, v[1]);
    return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
  }
  if (text.size() == 1 && text[0] >= 'A' && text[0] <= 'Z')
    return vertex_by_letter(poly, text[0]);
  auto comma = text.find(',');
  if (comma == std::string::npos)
    throw InputParseError("expected \"x,y\" with expression coordinates");
  return {eval_number_expr(text.substr(0, comma)),
          eval_number_expr(text.substr(comma + 1))};
}

// A direction is either a point-style vector or "to:<point>", aimed from
// the start.
Vec2 parse_dir(const std::string& text, Point2 start, const ConvexPolygon& poly) {
  if (text.rfind("to:", 0) == 0) {
    Point2 tgt = parse_point(text.substr(3), poly);
    return {tgt.x - start.x, tgt.y - start.y};
  }
  return parse_point(text, poly);
}

const char* terminal_name(TerminalKind k) {
  switch (k) {
    case TerminalKind::Periodic: return "periodic";
    case TerminalKind::OrthogonalChord: return "orthogonal-chord";
    case TerminalKind::VertexTerminated: return "vertex-terminated";
    case TerminalKind::Truncated: return "truncated";
  }
  return "truncated";
}

const char* truncation_name(TruncationReason r) {
  switch (r) {
    case TruncationReason::None: return "none";
    case TruncationReason::BounceBudget: return "bounce-budget";
    case TruncationReason::LengthBudget: return "length-budget";
    case TruncationReason::Tangential: return "tangential";
  }
  return "none";
}

json trajectory_to_json(const Trajectory& traj) {
  json segs = json::array();
  for (const auto& s : traj.segments)
    segs.push_back({{s.a.x, s.a.y}, {s.b.x, s.b.y}});
  json j{{"segments", segs},
         {"terminal", terminal_name(traj.terminal.kind)},
         {"length", traj.length()}};
  j["bounces"] = traj.bounces.size();
  if (traj.terminal.kind == TerminalKind::Periodic)
    j["closure_residual"] = traj.terminal.closure_residual;
  if (traj.terminal.kind == TerminalKind::VertexTerminated)
    j["vertex"] = traj.terminal.vertex;
  if (traj.terminal.kind == TerminalKind::Truncated)
    j["reason"] = truncation_name(traj.terminal.reason);
  return j;
}

std::string chain_svg(const ConvexPolygon& domain, const ChainMass& chain,
                      bool seedless) {
  SvgFigure fig = figure_for(domain);
  stamp(fig, seedless);
  fig.add_polygon(domain.vertices(), "#222");
  for (const auto& piece : chain.pieces) fig.add_polyline(piece, "#c22", 2.0);
  return fig.str();
}

// ------------------------------------------------------------------ commands

int cmd_width(const CommonOpts& c) {
  ConvexPolygon poly = resolve_polygon(c, "T");
  WidthResult w = geometric_width(poly);
  json j{{"width", w.value},
         {"direction", {w.direction.x, w.direction.y}},
         {"edge", w.edge}};
  std::cout << j.dump(2) << '\n';
  if (!c.out_dir.empty()) {
    auto fmts = formats_of(c);
    if (fmts.count("json")) write_file(c.out_dir, "width.json", j.dump(2) + "\n");
    if (fmts.count("svg")) {
      SvgFigure fig = figure_for(poly);
      stamp(fig, c.seedless);
      fig.add_polygon(poly.vertices(), "#222");
      std::string svg = fig.str();
      write_file(c.out_dir, "width.svg", svg);
    }
  }
  return kExitOk;
}

int cmd_billiard(const CommonOpts& c, const std::string& start_s,
                 const std::string& dir_s, const std::string& mode_s, int max_bounces,
                 double max_length) {
  ConvexPolygon poly = resolve_polygon(c, "T");
  SimulateOptions opt;
  opt.max_bounces = max_bounces;
  opt.max_length = max_length;
  if (mode_s == "plain")
    opt.mode = BilliardMode::Plain;
  else if (mode_s == "triangle")
    opt.mode = BilliardMode::Triangle;
  else
    throw InputParseError("unknown mode \"" + mode_s + "\" (plain or triangle)");

  Point2 start = parse_point(start_s, poly);
  Trajectory traj = simulate(poly, start, parse_dir(dir_s, start, poly), opt);
  Unfolding unf = unfold(traj);
  json j = trajectory_to_json(traj);
  j["unfold_residual"] = unf.residual;
  j["unfold_length"] = unf.straight_length;
  std::cout << j.dump(2) << '\n';

  if (!c.out_dir.empty()) {
    auto fmts = formats_of(c);
    if (fmts.count("json")) write_file(c.out_dir, "trajectory.json", j.dump(2) + "\n");
    if (fmts.count("csv")) {
      std::ostringstream os;
      os << "segment,x0,y0,x1,y1,length\n";
      char row[160];
      for (size_t i = 0; i < traj.segments.size(); ++i) {
        const Segment2& s = traj.segments[i];
        std::snprintf(row, sizeof row, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g\n", i,
                      s.a.x, s.a.y, s.b.x, s.b.y, s.length());
        os << row;
      }
      write_file(c.out_dir, "trajectory.csv", os.str());
    }
    if (fmts.count("svg")) {
      SvgFigure fig = figure_for(poly);
      stamp(fig, c.seedless);
      fig.add_polygon(poly.vertices(), "#222");
      std::vector<Point2> path{traj.segments.front().a};
      for (const auto& s : traj.segments) path.push_back(s.b);
      fig.add_polyline(path, "#c22", 2.0);
      fig.add_circle(path.front(), 3.0, "#28c");
      write_file(c.out_dir, "trajectory.svg", fig.str());
    }
  }
  return traj.terminal.kind == TerminalKind::Truncated ? kExitBudget : kExitOk;
}

struct FamilySetup {
  Family family;
  ConvexPolygon domain;     // 2D families
  bool has_domain = false;  // false for planes-tet
};

FamilySetup resolve_family(const std::string& name, const CommonOpts& c) {
  if (name == "phi-T" || name == "pair-phi-T") {
    ConvexPolygon tri = resolve_polygon(c, "T");
    return {name == "phi-T" ? make_phi_family(tri) : make_pair_phi_family(tri), tri,
            true};
  }
  if (name == "lines-P") {
    ConvexPolygon poly = resolve_polygon(c, "S");
    return {make_line_family(poly, poly.diameter()), poly, true};
  }
  if (name == "hyperbola-S") {
    ConvexPolygon sq = resolve_polygon(c, "S");
    return {make_hyperbola_family(sq), sq, true};
  }
  if (name == "planes-tet") {
    Tetrahedron tet = c.input.empty() ? builtin_tetrahedron()
                                      : tetrahedron_from_json(load_json_file(c.input));
    return {make_plane_family(tet), builtin_square(), false};
  }
  throw InputParseError("unknown family \"" + name + "\"");
}

ChainMass chain_at(const FamilySetup& setup, const std::vector<double>& t) {
  const std::string& name = setup.family.name;
  const ConvexPolygon& dom = setup.domain;
  if (name == "phi-T")
    return phi_mass(dom, dom.boundary_point(t[0]), dom.boundary_point(t[1]));
  if (name == "pair-phi-T")
    return pair_phi_mass(dom, dom.boundary_point(t[0]), dom.boundary_point(t[1]),
                         dom.boundary_point(t[2]), dom.boundary_point(t[3]));
  if (name == "lines-P") {
    Line2 line;
    if (line_from_projective(t[0], t[1], &line)) return line_sweepout_mass(dom, line);
    return {};
  }
  if (name == "hyperbola-S")
    return hyperbola_sweepout_mass(dom, projective4(t[0], t[1], t[2]));
  return {};
}

json report_to_json(const MaximizerReport& r) {
  return json{{"family", r.family},   {"best", r.best},
              {"argmax", r.argmax},   {"bound", r.bound},
              {"grid", r.grid},       {"refine_rounds", r.refine_rounds},
              {"samples", r.samples}};
}

int cmd_sweep_max(const CommonOpts& c, const std::string& family_name, int grid) {
  FamilySetup setup = resolve_family(family_name, c);
  GridSpec spec;
  spec.grid = grid;

  auto fmts = formats_of(c);
  std::ostringstream csv;
  bool want_csv = !c.out_dir.empty() && fmts.count("csv") > 0;
  if (want_csv) {
    for (int d = 0; d < setup.family.dim; ++d) csv << "t" << d << ',';
    csv << "mass\n";
  }
  MaximizerReport report = maximize_mass(
      setup.family, spec,
      want_csv ? std::function<void(const double*, double)>(
                     [&](const double* t, double m) {
                       char buf[40];
                       for (int d = 0; d < setup.family.dim; ++d) {
                         std::snprintf(buf, sizeof buf, "%.17g,", t[d]);
                         csv << buf;
                       }
                       std::snprintf(buf, sizeof buf, "%.17g\n", m);
                       csv << buf;
                     })
               : std::function<void(const double*, double)>());

  json j = report_to_json(report);
  std::cout << j.dump(2) << '\n';
  if (!c.out_dir.empty()) {
    if (fmts.count("json")) write_file(c.out_dir, "sweep_max.json", j.dump(2) + "\n");
    if (want_csv) write_file(c.out_dir, "sweep_samples.csv", csv.str());
    if (fmts.count("svg") && setup.has_domain) {
      ChainMass chain = chain_at(setup, report.argmax);
      write_file(c.out_dir, "argmax_chain.svg",
                 chain_svg(setup.domain, chain, c.seedless));
    }
  }
  return kExitOk;
}

int cmd_lattice(const CommonOpts& c, const std::string& kind_s, double cutoff) {
  LatticeKind kind;
  if (kind_s == "triangle")
    kind = LatticeKind::Triangle;
  else if (kind_s == "square")
    kind = LatticeKind::Square;
  else
    throw InputParseError("unknown lattice kind \"" + kind_s + "\"");
  LengthLattice lat = lattice_lengths(kind, cutoff);
  json values = json::array();
  for (const auto& v : lat.values)
    values.push_back({{"value", v.value}, {"a", v.a}, {"b", v.b}, {"n", v.n}});
  json j{{"kind", kind_s}, {"cutoff", cutoff}, {"values", values}};
  std::cout << j.dump(2) << '\n';
  if (!c.out_dir.empty() && formats_of(c).count("json"))
    write_file(c.out_dir, "lattice.json", j.dump(2) + "\n");
  return kExitOk;
}

int cmd_certify(const CommonOpts& c, int p, int grid) {
  CertifyOptions opt;
  opt.grid.grid = grid;
  WidthCertificate cert;
  if (!c.input.empty()) {
    if (p != 1)
      throw InputParseError("custom domains support only --p 1");
    cert = certify_width1(polygon_from_json(load_json_file(c.input)));
  } else {
    std::string dom = c.domain.empty() ? "T" : c.domain;
    if (dom != "T" && dom != "S")
      throw InputParseError("unknown domain \"" + dom + "\"");
    cert = certify(dom == "T" ? NamedDomain::Triangle : NamedDomain::Square, p, opt);
  }
  json j = certificate_to_json(cert);
  std::cout << j.dump(2) << '\n';
  if (!c.out_dir.empty() && formats_of(c).count("json"))
    write_file(c.out_dir, "certificate.json", j.dump(2) + "\n");
  return cert.certified ? kExitOk : kExitBounds;
}

int cmd_reproduce_all(const CommonOpts& c, int grid) {
  CertifyOptions opt;
  opt.grid.grid = grid;
  std::vector<WidthCertificate> certs = reproduce_all(opt);
  std::string csv = summary_csv(certs);
  std::cout << csv;
  if (!c.out_dir.empty()) {
    auto fmts = formats_of(c);
    if (fmts.count("csv") || fmts.count("json")) write_file(c.out_dir, "summary.csv", csv);
    if (fmts.count("json")) {
      json all = json::array();
      for (const auto& cert : certs) all.push_back(certificate_to_json(cert));
      write_file(c.out_dir, "certificates.json", all.dump(2) + "\n");
    }
  }
  return all_certified(certs) ? kExitOk : kExitBounds;
}

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--domain", c.domain, "Built-in domain: T or S");
  cmd->add_option("--input", c.input, "Geometry JSON file");
  cmd->add_option("--out", c.out_dir, "Artifact output directory");
  cmd->add_option("--format", c.format, "Comma list of json,csv,svg");
  cmd->add_flag("--seedless", c.seedless, "Suppress timestamps in SVG output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Width, billiard, and sweepout certification toolkit"};
  app.require_subcommand(1);

  CommonOpts wc, bc, sc, lc, cc, rc;
  std::string start_s, dir_s, mode_s = "plain";
  int max_bounces = 10000;
  double max_length = 0.0;
  std::string family_name, kind_s;
  double cutoff = 10.0;
  int p = 1, grid = 0, cert_grid = 0, rep_grid = 0;

  CLI::App* width = app.add_subcommand("width", "Slab width of a convex polygon");
  add_common(width, wc);

  CLI::App* billiard = app.add_subcommand("billiard", "Trace a billiard trajectory");
  add_common(billiard, bc);
  billiard->add_option("--start", start_s, "Start point \"x,y\", \"A\", or \"mid:AB\"")
      ->required();
  billiard->add_option("--dir", dir_s, "Direction \"dx,dy\" or \"to:mid:BC\"")
      ->required();
  billiard->add_option("--mode", mode_s, "Reflection mode: plain or triangle");
  billiard->add_option("--max-bounces", max_bounces, "Bounce budget");
  billiard->add_option("--max-length", max_length, "Length budget (0: 1000*diam)");

  CLI::App* sweep = app.add_subcommand("sweep-max", "Maximize a sweepout family mass");
  add_common(sweep, sc);
  sweep->add_option("--family", family_name,
                    "phi-T, pair-phi-T, lines-P, hyperbola-S, planes-tet")
      ->required();
  sweep->add_option("--grid", grid, "Coarse grid points per dimension");

  CLI::App* lattice = app.add_subcommand("lattice", "Admissible closed lengths");
  add_common(lattice, lc);
  lattice->add_option("--kind", kind_s, "triangle or square")->required();
  lattice->add_option("--cutoff", cutoff, "Largest length to enumerate");

  CLI::App* certify_cmd = app.add_subcommand("certify", "Certify a p-width value");
  add_common(certify_cmd, cc);
  certify_cmd->add_option("--p", p, "Width index p")->required();
  certify_cmd->add_option("--grid", cert_grid, "Maximizer grid override");

  CLI::App* rep = app.add_subcommand("reproduce-all", "All seven certifications");
  add_common(rep, rc);
  rep->add_option("--grid", rep_grid, "Maximizer grid override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (width->parsed()) return cmd_width(wc);
    if (billiard->parsed())
      return cmd_billiard(bc, start_s, dir_s, mode_s, max_bounces, max_length);
    if (sweep->parsed()) return cmd_sweep_max(sc, family_name, grid);
    if (lattice->parsed()) return cmd_lattice(lc, kind_s, cutoff);
    if (certify_cmd->parsed()) return cmd_certify(cc, p, cert_grid);
    if (rep->parsed()) return cmd_reproduce_all(rc, rep_grid);
  } catch (const InputParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  }
  return kExitOk;
}

#include "tess/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tess/error.hpp"

namespace tess {
namespace {

const char* chi_color(int chi) {
  if (chi <= -2) return "#7f1d1d";
  if (chi == -1) return "#f97316";
  if (chi == 0) return "#d4d4d8";
  if (chi == 1) return "#93c5fd";
  return "#7c3aed";
}

struct Mapper {
  double x0 = 0.0, y1 = 0.0, scale = 100.0;
  double X(double x) const { return (x - x0) * scale; }
  double Y(double y) const { return (y1 - y) * scale; }
};

void path_move(std::ostringstream& d, const Mapper& m, Point2 p) {
  d << "M " << m.X(p.x) << ' ' << m.Y(p.y) << ' ';
}

// The y flip turns anticlockwise sweeps into svg sweep-flag 0.
void path_arc(std::ostringstream& d, const Mapper& m, const HalfEdge& h,
              Point2 to) {
  const double r = h.radius * m.scale;
  d << "A " << r << ' ' << r << " 0 " << (std::abs(h.sweep) > kPi ? 1 : 0) << ' '
    << (h.sweep > 0 ? 0 : 1) << ' ' << m.X(to.x) << ' ' << m.Y(to.y) << ' ';
}

void circuit_path(std::ostringstream& d, const Mapper& m, const FaceSet& fs,
                  int ci) {
  const Circuit& c = fs.circuits[ci];
  if (c.circle >= 0) {
    const FullCircle& fc = fs.eg.circles[c.circle];
    const Point2 a{fc.center.x + fc.radius, fc.center.y};
    const Point2 b{fc.center.x - fc.radius, fc.center.y};
    const double r = fc.radius * m.scale;
    const int flag = c.orientation > 0 ? 0 : 1;
    path_move(d, m, a);
    d << "A " << r << ' ' << r << " 0 1 " << flag << ' ' << m.X(b.x) << ' '
      << m.Y(b.y) << ' ';
    d << "A " << r << ' ' << r << " 0 1 " << flag << ' ' << m.X(a.x) << ' '
      << m.Y(a.y) << ' ';
    d << "Z ";
    return;
  }
  bool first = true;
  for (const auto& v : c.visits) {
    const HalfEdge& h = fs.eg.hedges[v.hedge];
    if (first) {
      path_move(d, m, fs.eg.nodes[h.from]);
      first = false;
    }
    const Point2 to = fs.eg.nodes[h.to];
    if (h.is_arc) {
      path_arc(d, m, h, to);
    } else {
      d << "L " << m.X(to.x) << ' ' << m.Y(to.y) << ' ';
    }
  }
  d << "Z ";
}

}  // namespace

void write_svg(const std::string& path, const GeometricGraph& g,
               const FaceSet* faces, const SvgOptions& opt) {
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
  bool have = false;
  auto grow = [&](double x, double y) {
    if (!have) {
      x0 = x1 = x;
      y0 = y1 = y;
      have = true;
      return;
    }
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  };
  for (const auto& p : g.nodes) grow(p.x, p.y);
  if (faces) {
    for (const auto& fc : faces->eg.circles) {
      grow(fc.center.x - fc.radius, fc.center.y - fc.radius);
      grow(fc.center.x + fc.radius, fc.center.y + fc.radius);
    }
    for (const auto& h : faces->eg.hedges) {
      if (h.is_arc) {
        grow(h.center.x - h.radius, h.center.y - h.radius);
        grow(h.center.x + h.radius, h.center.y + h.radius);
      }
    }
  }
  x0 -= opt.margin;
  y0 -= opt.margin;
  x1 += opt.margin;
  y1 += opt.margin;

  Mapper m{x0, y1, opt.scale};
  const double W = (x1 - x0) * opt.scale;
  const double H = (y1 - y0) * opt.scale;

  std::ostringstream out;
  out.precision(10);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << W << ' '
      << H << "\" width=\"" << W << "\" height=\"" << H << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";

  if (faces && opt.fill_faces) {
    for (int f = 0; f < static_cast<int>(faces->faces.size()); ++f) {
      if (f == faces->sink) continue;
      const Face& face = faces->faces[f];
      std::ostringstream d;
      d.precision(10);
      circuit_path(d, m, *faces, face.outer);
      for (int hc : face.holes) circuit_path(d, m, *faces, hc);
      out << "<path d=\"" << d.str() << "\" fill=\"" << chi_color(face.chi)
          << "\" fill-opacity=\"0.55\" fill-rule=\"evenodd\" stroke=\"none\"/>\n";
    }
  }

  out << "<g stroke=\"#111111\" stroke-width=\"1.5\" stroke-linecap=\"round\">\n";
  for (const auto& [a, b] : g.links) {
    out << "<line x1=\"" << m.X(g.nodes[a].x) << "\" y1=\"" << m.Y(g.nodes[a].y)
        << "\" x2=\"" << m.X(g.nodes[b].x) << "\" y2=\"" << m.Y(g.nodes[b].y)
        << "\"/>\n";
  }
  out << "</g>\n";

  if (faces) {
    // Window boundary arcs, each drawn once from its anticlockwise side.
    out << "<g stroke=\"#0b5394\" stroke-width=\"1.5\" fill=\"none\">\n";
    for (const auto& h : faces->eg.hedges) {
      if (!h.is_arc || h.sweep <= 0) continue;
      std::ostringstream d;
      d.precision(10);
      path_move(d, m, faces->eg.nodes[h.from]);
      path_arc(d, m, h, faces->eg.nodes[h.to]);
      out << "<path d=\"" << d.str() << "\"/>\n";
    }
    for (const auto& fc : faces->eg.circles) {
      out << "<circle cx=\"" << m.X(fc.center.x) << "\" cy=\"" << m.Y(fc.center.y)
          << "\" r=\"" << fc.radius * m.scale << "\"/>\n";
    }
    out << "</g>\n";
  }

  for (int n : g.isolated_nodes) {
    out << "<circle cx=\"" << m.X(g.nodes[n].x) << "\" cy=\"" << m.Y(g.nodes[n].y)
        << "\" r=\"2.5\" fill=\"#111111\"/>\n";
  }
  for (int n = 0; n < static_cast<int>(g.nodes.size()); ++n) {
    const VertexClass vc = classify_vertex(g, n);
    if (!vc.is_double_pi) continue;
    out << "<circle cx=\"" << m.X(g.nodes[n].x) << "\" cy=\"" << m.Y(g.nodes[n].y)
        << "\" r=\"5\" fill=\"none\" stroke=\"#b91c1c\" stroke-width=\"1.5\"/>\n"
        << "<circle cx=\"" << m.X(g.nodes[n].x) << "\" cy=\"" << m.Y(g.nodes[n].y)
        << "\" r=\"1.8\" fill=\"#b91c1c\"/>\n";
  }

  out << "</svg>\n";
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::IoError, "cannot open for write: " + path);
  f << out.str();
  if (!f) throw Error(ErrorCode::IoError, "write failed: " + path);
}

}  // namespace tess

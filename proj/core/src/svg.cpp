#include "esmt/svg.hpp"

#include <algorithm>
#include <cstdio>

namespace esmt {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string render_svg(const SteinerTree& tree,
                       const std::optional<Instance>& instance) {
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  bool first = true;
  for (int v = 0; v < tree.vertex_count(); ++v) {
    const Point p = tree.vertex(v);
    if (first) {
      xmin = xmax = p.x;
      ymin = ymax = p.y;
      first = false;
    }
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double extent = std::max({xmax - xmin, ymax - ymin, 1e-9});
  const double pad = 0.05 * extent;
  const double r_term = 0.01 * extent;
  const double w_edge = 0.004 * extent;

  // Flip y so the plane's +y points up on screen.
  const auto sy = [&](double y) { return ymin + ymax - y; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" +
         num(xmin - pad) + " " + num(ymin - pad) + " " +
         num(xmax - xmin + 2 * pad) + " " + num(ymax - ymin + 2 * pad) +
         "\">\n";
  for (const auto& [u, v] : tree.edges) {
    const Point a = tree.vertex(u), b = tree.vertex(v);
    out += "  <line x1=\"" + num(a.x) + "\" y1=\"" + num(sy(a.y)) +
           "\" x2=\"" + num(b.x) + "\" y2=\"" + num(sy(b.y)) +
           "\" stroke=\"#333333\" stroke-width=\"" + num(w_edge) + "\"/>\n";
  }

  const bool cpr = instance && instance->metadata.count("kind") &&
                   instance->metadata.at("kind") == "cpr";
  const size_t half = tree.terminals.size() / 2;
  for (size_t i = 0; i < tree.terminals.size(); ++i) {
    const Point p = tree.terminals[i];
    const char* fill = cpr ? (i < half ? "#1f77b4" : "#d62728") : "#1f77b4";
    out += "  <circle cx=\"" + num(p.x) + "\" cy=\"" + num(sy(p.y)) +
           "\" r=\"" + num(r_term) + "\" fill=\"" + fill + "\"/>\n";
  }
  for (const Point& p : tree.steiner_points)
    out += "  <circle cx=\"" + num(p.x) + "\" cy=\"" + num(sy(p.y)) +
           "\" r=\"" + num(r_term) + "\" fill=\"none\" stroke=\"#2ca02c\"" +
           " stroke-width=\"" + num(w_edge) + "\"/>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace esmt

#include "pll/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace pll {

namespace {

// Fixed-precision decimal so output is byte-stable across platforms.
std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

}  // namespace

std::string render_packing_svg(const CirclePacking& p, const SvgOptions& options) {
  const int n = p.graph.vertex_count();
  if (int(p.center.size()) != n || int(p.radius.size()) != n)
    throw std::invalid_argument("render_packing_svg: packing arrays out of step with graph");
  if (n == 0) throw std::invalid_argument("render_packing_svg: empty packing");
  if (options.root >= n)
    throw std::invalid_argument("render_packing_svg: root out of range");

  double lo_x = p.center[0].x, hi_x = lo_x, lo_y = p.center[0].y, hi_y = lo_y;
  for (int v = 0; v < n; ++v) {
    lo_x = std::min(lo_x, p.center[v].x - p.radius[v]);
    hi_x = std::max(hi_x, p.center[v].x + p.radius[v]);
    lo_y = std::min(lo_y, p.center[v].y - p.radius[v]);
    hi_y = std::max(hi_y, p.center[v].y + p.radius[v]);
  }
  const double span = std::max(hi_x - lo_x, hi_y - lo_y);
  const double pad = span * options.margin;
  const double scale = options.size / (span + 2.0 * pad);
  // SVG y grows downward; flip so the packing keeps its mathematical
  // orientation.
  auto X = [&](double x) { return (x - lo_x + pad) * scale; };
  auto Y = [&](double y) { return (hi_y - y + pad) * scale; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(options.size) +
         "\" height=\"" + num(options.size) + "\" viewBox=\"0 0 " + num(options.size) + " " +
         num(options.size) + "\">\n";
  if (options.edges) {
    out += "<g stroke=\"#888888\" stroke-width=\"1\">\n";
    for (const Edge& e : p.graph.edges()) {
      out += "<line x1=\"" + num(X(p.center[e.u].x)) + "\" y1=\"" + num(Y(p.center[e.u].y)) +
             "\" x2=\"" + num(X(p.center[e.v].x)) + "\" y2=\"" + num(Y(p.center[e.v].y)) +
             "\"/>\n";
    }
    out += "</g>\n";
  }
  out += "<g fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"1\">\n";
  for (int v = 0; v < n; ++v) {
    out += "<circle cx=\"" + num(X(p.center[v].x)) + "\" cy=\"" + num(Y(p.center[v].y)) +
           "\" r=\"" + num(p.radius[v] * scale) + "\"/>\n";
  }
  out += "</g>\n";
  if (options.root >= 0) {
    const int v = options.root;
    out += "<circle cx=\"" + num(X(p.center[v].x)) + "\" cy=\"" + num(Y(p.center[v].y)) +
           "\" r=\"" + num(p.radius[v] * scale) +
           "\" fill=\"#d45500\" fill-opacity=\"0.5\" stroke=\"#d45500\" stroke-width=\"2\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace pll

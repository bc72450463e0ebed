#pragma once

// Deterministic SVG rendering of circle packings: one <circle> element per
// vertex, an optional tangency-edge overlay, and an optional highlighted
// root.  Identical inputs produce byte-identical documents (all coordinates
// are printed with a fixed format).

#include <string>

#include "pll/packing.hpp"

namespace pll {

struct SvgOptions {
  bool edges = true;      // draw center-to-center tangency segments
  int root = -1;          // highlight this vertex; -1 for none
  double size = 640.0;    // width and height of the output, in SVG units
  double margin = 0.05;   // fraction of the bounding box added on each side
};

std::string render_packing_svg(const CirclePacking& p, const SvgOptions& options = {});

}  // namespace pll

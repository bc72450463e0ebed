#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pll/graph.hpp"
#include "pll/network.hpp"

namespace pll {

// Path 0 - 1 - ... - n-1 on n >= 1 vertices.
PlanarGraph path_graph(int n);

// Cycle on n >= 3 vertices.
PlanarGraph cycle_graph(int n);

// width x height rectangular grid; vertex (x, y) has id y * width + x and
// counterclockwise neighbor order east, north, west, south.
PlanarGraph grid_graph(int width, int height);

// Complete binary tree with `height` edge levels and heap numbering
// (root 0, children of i at 2i+1 and 2i+2); 2^(height+1) - 1 vertices.
PlanarGraph binary_tree(int height);

// The 4-vertex sphere triangulation: 0,1,2 form the outer triangle, 3 sits
// inside it.
PlanarGraph tetrahedron();

// Hexagonal patch of the triangular lattice: vertices are the axial
// coordinates (a, b) with |a| <= radius, |b| <= radius, |a + b| <= radius,
// which gives 3r^2 + 3r + 1 vertices.  Every face except the outer one is a
// triangle.
struct TriangularDisk {
  PlanarGraph graph;
  std::vector<std::array<int, 2>> axial;  // per-vertex lattice coordinates
  std::vector<Vertex> boundary;           // outer cycle, counterclockwise
  Vertex center = 0;                      // the vertex at (0, 0)
};
TriangularDisk triangular_disk(int radius);

// Binary tree of the given height where each tree edge at height k (counted
// from the leaves, k = 1..height) is replaced by ceil(k^(1/alpha)) parallel
// two-edge paths through fresh midpoint vertices.  All resistances are 1.
// The parallel paths are nested in the rotation system, so the graph stays
// planar.  The probe endpoints are the leftmost deepest leaf and the root:
// the probe resistance is sum_k 2 / ceil(k^(1/alpha)), which stays bounded
// as the height grows whenever alpha < 1.
struct BundledTree {
  Network network;
  Vertex base_leaf = 0;
  Vertex apex = 0;
  int height = 0;
  double alpha = 0.5;
};
BundledTree bundled_tree(int height, double alpha);

// The probe path of bundled_tree only: the leaf-to-root spine together with
// its bundles.  The side subtrees of the full tree are dead ends that carry
// no current, so the spine has exactly the same probe resistance while
// staying small enough to build for large heights.
BundledTree bundled_tree_spine(int height, double alpha);

// Number of parallel paths used for a bundle at height k (exposed so tests
// and reports can label bundles; k >= 1).
long bundle_width(int k, double alpha);

// Random sphere triangulation on n >= 4 vertices produced by a flip chain:
// starting from a fixed triangulation (tetrahedron for n = 4, a bipyramid
// otherwise), `steps` proposals each pick a uniform edge and flip it to the
// opposite diagonal of its two incident triangles whenever the result is
// still a simple triangulation (and, when max_degree > 0, no degree exceeds
// max_degree).  Returns the final triangulation.
PlanarGraph flip_mcmc_triangulation(int n, std::int64_t steps, std::uint64_t seed,
                                    int max_degree = 0);

// True when g is simple, connected, rotation-consistent on the sphere, and
// every face is a triangle.
bool is_sphere_triangulation(const PlanarGraph& g);

}  // namespace pll

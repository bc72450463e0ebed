#pragma once

#include <array>
#include <string>
#include <vector>

#include "pll/graph.hpp"
#include "pll/network.hpp"

namespace pll {

// G with every edge e = (u, v) subdivided through a fresh vertex w_e whose
// id is n + edge_id (ids of original vertices are preserved).  Rotations are
// inherited, so subdividing keeps planarity.
struct Subdivision {
  PlanarGraph graph;
  int original_vertices = 0;
  Vertex edge_vertex(int edge_id) const { return original_vertices + edge_id; }
};
Subdivision subdivide(const PlanarGraph& g);

enum class StarVertexKind : unsigned char {
  Root,      // an original vertex, root of its replacement tree
  Internal,  // internal tree vertex
  EdgeLeaf,  // subdivision vertex w_e, shared leaf of its two endpoint trees
};

// Star-tree transform: the star of edges around each vertex v is replaced by
// a balanced binary tree rooted at v whose leaves are the subdivision
// vertices w_e of the edges at v, taken in rotation order.  Each w_e is
// shared by the trees of its two endpoints, so the transformed graph is the
// union of all the trees glued along the w_e.  Every edge of v's tree gets
// resistance 1/deg(v).
//
// Vertex ids: 0..n-1 are the roots (same ids as in g), n..n+m-1 are the
// edge leaves (same ids as in the subdivision), and internal tree vertices
// follow.  When g carries a consistent sphere embedding the transform does
// too; otherwise tree leaves are ordered by id and the result is returned
// without an embedding guarantee.
struct StarTransform {
  PlanarGraph original;   // the input graph
  Subdivision subdivision;
  PlanarGraph graph;      // the transformed graph
  Network network;        // tree edges weighted 1/deg(owner)

  std::vector<StarVertexKind> kind;  // per transform vertex
  // Owning original vertex for roots and internal vertices; -1 for leaves.
  std::vector<int> owner;
  // Original edge id for edge leaves; -1 otherwise.
  std::vector<int> origin_edge;
  // Degree marks: deg(v) on v's tree, max of the two endpoint degrees on a
  // shared leaf.
  std::vector<int> mark;
  // Root-to-vertex path in the owning tree, '0' = left, '1' = right; empty
  // for roots and for edge leaves (leaves have one code per endpoint tree,
  // see leaf_code).
  std::vector<std::string> code;
  // Per original edge (u, v) with u < v: the leaf's path code in u's tree
  // and in v's tree.
  std::vector<std::array<std::string, 2>> leaf_code;
  // Children of each transform vertex inside its tree ({-1, -1} for leaves;
  // {c, -1} for a degree-1 root).  parent_of is -1 for roots; an edge leaf
  // has two parents, stored per original edge in leaf_parents.
  std::vector<std::array<int, 2>> children;
  std::vector<int> parent_of;
  std::vector<std::array<int, 2>> leaf_parents;  // per edge: parent in u's, v's tree

  Vertex edge_vertex(int edge_id) const { return original.vertex_count() + edge_id; }
};
StarTransform star_tree_transform(const PlanarGraph& g);

// Lift of a flow along the transform.  The input flow lives on g with unit
// resistances; `subdivided` routes it through the subdivision vertices (unit
// resistances), and `transformed` routes it through the trees, where the
// value on a tree edge is the sum of the leaf values beneath it.  By
// construction the lifted flows conserve exactly at subdivision vertices and
// internal tree vertices.  With sources and sinks as in the input flow,
// energy_subdivided == 2 * energy_base and energy_transformed stays within a
// constant factor (at most 4) of energy_base.
struct LiftedFlow {
  Flow subdivided;
  Flow transformed;
  double energy_base = 0.0;         // unit resistances on the input graph
  double energy_subdivided = 0.0;   // unit resistances on the subdivision
  double energy_transformed = 0.0;  // tree resistances 1/deg(owner)
};
LiftedFlow lift_flow(const StarTransform& st, const Flow& theta);

}  // namespace pll

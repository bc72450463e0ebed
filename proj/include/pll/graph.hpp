#pragma once

// Embedded graphs as rotation systems: every vertex stores the cyclic,
// counterclockwise order of its incident edges.  The rotation system fixes
// the set of faces (trace with "next edge after (u,v) is (v, w) where w
// precedes u in the rotation at v"), so a graph is planar exactly when the
// traced face count satisfies Euler's formula.

#include <cstdint>
#include <string>
#include <vector>

namespace pll {

using Vertex = int;

struct Edge {
  Vertex u, v;  // u < v in the canonical edge list
};

class PlanarGraph {
 public:
  PlanarGraph() = default;
  PlanarGraph(int n, std::vector<std::vector<Vertex>> rot, bool simple = true);

  int vertex_count() const { return int(rot_.size()); }
  int edge_count() const { return int(edges_.size()); }
  bool simple() const { return simple_; }

  const std::vector<Vertex>& neighbors(Vertex v) const { return rot_[v]; }
  const std::vector<std::vector<Vertex>>& rotations() const { return rot_; }
  int degree(Vertex v) const { return int(rot_[v].size()); }

  // Canonical edge list: enumerate u ascending, then rotation position;
  // each edge appears once, stored with u < v.  The order is the contract
  // for any per-edge array (resistances, flow values, JSON "R").
  const std::vector<Edge>& edges() const { return edges_; }

  // Edge id lookup; -1 when absent.  For parallel edges returns the first.
  int edge_id(Vertex u, Vertex v) const;
  // Edge ids incident to v, aligned index-by-index with neighbors(v).
  const std::vector<int>& incident_edge_ids(Vertex v) const { return inc_[v]; }

  bool adjacent(Vertex u, Vertex v) const { return edge_id(u, v) >= 0; }

  // Faces as closed directed walks (each directed edge used exactly once).
  // Requires a simple graph.  Face k is a vertex sequence w_0 .. w_{len-1}
  // with directed edges (w_i -> w_{i+1 mod len}).
  std::vector<std::vector<Vertex>> faces() const;

  // True when the rotation system describes a genus-0 (planar) embedding of
  // a connected graph: V - E + F == 2.
  bool planar_embedding() const;

  bool connected() const;

  // BFS distances from `root`; unreachable vertices get -1.  Neighbor order
  // follows the rotation system, so traversal order is deterministic.
  std::vector<int> bfs_distances(Vertex root) const;

 private:
  void build_edges();
  std::vector<std::vector<Vertex>> rot_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> inc_;
  bool simple_ = true;
};

// A graph with a distinguished root vertex.
struct RootedGraph {
  PlanarGraph graph;
  Vertex root = 0;
};

// Induced subgraph on the vertices within distance r of the root, with the
// inherited rotation order.  Vertices are renumbered in BFS discovery order
// (root first); parent_vertex maps new ids back to the source graph.
struct Ball {
  PlanarGraph graph;
  Vertex root = 0;
  int radius = 0;
  std::vector<Vertex> parent_vertex;
};

Ball ball(const PlanarGraph& g, Vertex root, int radius);

}  // namespace pll

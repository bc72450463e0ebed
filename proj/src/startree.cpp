#include "pll/startree.hpp"

#include <algorithm>
#include <stdexcept>

namespace pll {

Subdivision subdivide(const PlanarGraph& g) {
  const int n = g.vertex_count();
  const int m = g.edge_count();
  std::vector<std::vector<Vertex>> rot(std::size_t(n) + m);
  for (Vertex v = 0; v < n; ++v) {
    const auto& ids = g.incident_edge_ids(v);
    rot[std::size_t(v)].reserve(ids.size());
    for (const int e : ids) rot[std::size_t(v)].push_back(n + e);
  }
  for (int e = 0; e < m; ++e) {
    const Edge ed = g.edges()[e];
    rot[std::size_t(n) + e] = {ed.u, ed.v};
  }
  Subdivision out{PlanarGraph(n + m, rot), n};
  return out;
}

namespace {

struct TreeBuilder {
  const PlanarGraph& g;
  StarTransform& st;
  int next_id;

  // Builds the subtree over leaves[lo..hi) for owner vertex v and returns
  // its top vertex.  The root call passes the owner itself as `as_vertex`.
  Vertex build(Vertex v, const std::vector<Vertex>& leaves, int lo, int hi,
               const std::string& prefix, Vertex as_vertex) {
    Vertex node;
    if (as_vertex >= 0) {
      node = as_vertex;  // the root: v itself
    } else if (hi - lo == 1) {
      node = leaves[std::size_t(lo)];  // a shared edge leaf
      const int e = st.origin_edge[std::size_t(node)];
      const Edge ed = g.edges()[e];
      st.leaf_code[std::size_t(e)][v == ed.u ? 0 : 1] = prefix;
      return node;
    } else {
      node = next_id++;
      st.kind.push_back(StarVertexKind::Internal);
      st.owner.push_back(v);
      st.origin_edge.push_back(-1);
      st.mark.push_back(g.degree(v));
      st.code.push_back(prefix);
      st.children.push_back({-1, -1});
      st.parent_of.push_back(-1);
    }
    const int count = hi - lo;
    if (count == 1) {
      // Degree-1 owner: the root hangs the single leaf directly.
      const Vertex leaf = build(v, leaves, lo, hi, prefix + "0", -1);
      st.children[std::size_t(node)] = {leaf, -1};
      attach(v, node, leaf);
      return node;
    }
    const int mid = lo + (count + 1) / 2;  // bigger half left: deep leaves leftmost
    const Vertex left = build(v, leaves, lo, mid, prefix + "0", -1);
    const Vertex right = build(v, leaves, mid, hi, prefix + "1", -1);
    st.children[std::size_t(node)] = {left, right};
    attach(v, node, left);
    attach(v, node, right);
    return node;
  }

  void attach(Vertex v, Vertex parent, Vertex child) {
    if (st.kind[std::size_t(child)] == StarVertexKind::EdgeLeaf) {
      const int e = st.origin_edge[std::size_t(child)];
      const Edge ed = g.edges()[e];
      st.leaf_parents[std::size_t(e)][v == ed.u ? 0 : 1] = parent;
    } else {
      st.parent_of[std::size_t(child)] = parent;
    }
  }
};

}  // namespace

StarTransform star_tree_transform(const PlanarGraph& g) {
  const int n = g.vertex_count();
  const int m = g.edge_count();

  StarTransform st;
  st.original = g;
  st.subdivision = subdivide(g);

  st.kind.assign(std::size_t(n) + m, StarVertexKind::Root);
  st.owner.assign(std::size_t(n) + m, -1);
  st.origin_edge.assign(std::size_t(n) + m, -1);
  st.mark.assign(std::size_t(n) + m, 0);
  st.code.assign(std::size_t(n) + m, std::string());
  st.children.assign(std::size_t(n) + m, {-1, -1});
  st.parent_of.assign(std::size_t(n) + m, -1);
  st.leaf_code.assign(std::size_t(m), {std::string(), std::string()});
  st.leaf_parents.assign(std::size_t(m), {-1, -1});
  for (Vertex v = 0; v < n; ++v) {
    st.owner[std::size_t(v)] = v;
    st.mark[std::size_t(v)] = g.degree(v);
  }
  for (int e = 0; e < m; ++e) {
    const Edge ed = g.edges()[e];
    st.kind[std::size_t(n) + e] = StarVertexKind::EdgeLeaf;
    st.origin_edge[std::size_t(n) + e] = e;
    st.mark[std::size_t(n) + e] = std::max(g.degree(ed.u), g.degree(ed.v));
  }

  const bool embedded = g.connected() && g.planar_embedding();

  TreeBuilder tb{g, st, n + m};
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) == 0) continue;
    std::vector<Vertex> leaves;
    for (const int e : g.incident_edge_ids(v)) leaves.push_back(n + e);
    if (embedded) {
      // Keep the rotation's cyclic order, anchored at the smallest leaf id.
      const auto mn = std::min_element(leaves.begin(), leaves.end());
      std::rotate(leaves.begin(), mn, leaves.end());
    } else {
      std::sort(leaves.begin(), leaves.end());
    }
    tb.build(v, leaves, 0, int(leaves.size()), "", v);
  }

  // Rotations: roots list their children, internal vertices parent-left-
  // right, and shared leaves their two tree parents.
  const int total = tb.next_id;
  std::vector<std::vector<Vertex>> rot(static_cast<std::size_t>(total));
  for (Vertex x = 0; x < total; ++x) {
    switch (st.kind[std::size_t(x)]) {
      case StarVertexKind::Root:
        for (const int c : st.children[std::size_t(x)])
          if (c >= 0) rot[std::size_t(x)].push_back(c);
        break;
      case StarVertexKind::Internal:
        rot[std::size_t(x)].push_back(st.parent_of[std::size_t(x)]);
        rot[std::size_t(x)].push_back(st.children[std::size_t(x)][0]);
        rot[std::size_t(x)].push_back(st.children[std::size_t(x)][1]);
        break;
      case StarVertexKind::EdgeLeaf: {
        const int e = st.origin_edge[std::size_t(x)];
        rot[std::size_t(x)].push_back(st.leaf_parents[std::size_t(e)][0]);
        rot[std::size_t(x)].push_back(st.leaf_parents[std::size_t(e)][1]);
        break;
      }
    }
  }
  st.graph = PlanarGraph(total, rot);

  // Every tree edge inherits resistance 1/deg(owner); the owner is the
  // non-leaf endpoint (both endpoints agree inside a tree).
  std::vector<double> resistance(std::size_t(st.graph.edge_count()), 1.0);
  for (int e = 0; e < st.graph.edge_count(); ++e) {
    const Edge ed = st.graph.edges()[e];
    const Vertex inner =
        st.kind[std::size_t(ed.u)] == StarVertexKind::EdgeLeaf ? ed.v : ed.u;
    resistance[std::size_t(e)] = 1.0 / g.degree(st.owner[std::size_t(inner)]);
  }
  st.network = Network(st.graph, resistance);
  return st;
}

namespace {

// Post-order accumulation of subtree leaf inflows for one replacement tree.
double accumulate(const StarTransform& st, const Flow& theta, Vertex v, Vertex node,
                  Vertex parent, Flow& out) {
  double sum = 0.0;
  if (st.kind[std::size_t(node)] == StarVertexKind::EdgeLeaf) {
    const int e = st.origin_edge[std::size_t(node)];
    const Edge ed = st.original.edges()[e];
    sum = ed.v == v ? theta.value[std::size_t(e)] : -theta.value[std::size_t(e)];
  } else {
    for (const int c : st.children[std::size_t(node)])
      if (c >= 0) sum += accumulate(st, theta, v, c, node, out);
  }
  if (parent >= 0) {
    const int id = st.graph.edge_id(node, parent);
    const Edge ed = st.graph.edges()[id];
    out.value[std::size_t(id)] = ed.u == node ? sum : -sum;
  }
  return sum;
}

}  // namespace

LiftedFlow lift_flow(const StarTransform& st, const Flow& theta) {
  const PlanarGraph& g = st.original;
  if (int(theta.value.size()) != g.edge_count())
    throw std::invalid_argument("lift_flow: flow does not match the transformed graph's base");

  LiftedFlow out;
  for (const double t : theta.value) out.energy_base += t * t;

  // Through the subdivision: the edge value continues through w_e.
  out.subdivided.value.assign(std::size_t(st.subdivision.graph.edge_count()), 0.0);
  out.subdivided.source = theta.source;
  out.subdivided.sink = theta.sink;
  out.subdivided.strength = theta.strength;
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge ed = g.edges()[e];
    const Vertex w = st.subdivision.edge_vertex(e);
    const int eu = st.subdivision.graph.edge_id(ed.u, w);
    const int ev = st.subdivision.graph.edge_id(ed.v, w);
    out.subdivided.value[std::size_t(eu)] = theta.value[std::size_t(e)];
    out.subdivided.value[std::size_t(ev)] = -theta.value[std::size_t(e)];
    out.energy_subdivided += 2.0 * theta.value[std::size_t(e)] * theta.value[std::size_t(e)];
  }

  // Through the trees: each tree edge carries the sum of the leaf inflows
  // beneath it, so conservation at internal vertices holds by construction.
  out.transformed.value.assign(std::size_t(st.graph.edge_count()), 0.0);
  out.transformed.source = theta.source;
  out.transformed.sink = theta.sink;
  out.transformed.strength = theta.strength;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) > 0) accumulate(st, theta, v, v, -1, out.transformed);
  out.energy_transformed = 0.0;
  for (int e = 0; e < st.graph.edge_count(); ++e)
    out.energy_transformed += st.network.resistance(e) * out.transformed.value[std::size_t(e)] *
                              out.transformed.value[std::size_t(e)];
  return out;
}

}  // namespace pll

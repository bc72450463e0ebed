#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "pll/electric.hpp"
#include "pll/generators.hpp"
#include "pll/startree.hpp"
#include "support.hpp"

using pll::PlanarGraph;
using pll::star_tree_transform;
using pll::StarVertexKind;
using pll::Vertex;

TEST_CASE("subdivision inserts one degree-2 vertex per edge") {
  pll::Rng rng(61, 0);
  const PlanarGraph g = support::random_planar_subgraph(rng, 40, 3000, 0.3);
  const pll::Subdivision sub = pll::subdivide(g);
  CHECK(sub.original_vertices == g.vertex_count());
  CHECK(sub.graph.vertex_count() == g.vertex_count() + g.edge_count());
  CHECK(sub.graph.edge_count() == 2 * g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    const Vertex w = sub.edge_vertex(e);
    CHECK(sub.graph.degree(w) == 2);
    CHECK(sub.graph.adjacent(w, g.edges()[std::size_t(e)].u));
    CHECK(sub.graph.adjacent(w, g.edges()[std::size_t(e)].v));
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v) CHECK(sub.graph.degree(v) == g.degree(v));
  CHECK(sub.graph.planar_embedding());
}

TEST_CASE("triangle transform is a six-cycle with resistance 1/2") {
  const pll::StarTransform st = star_tree_transform(pll::cycle_graph(3));
  CHECK(st.graph.vertex_count() == 6);
  CHECK(st.graph.edge_count() == 6);
  for (Vertex v = 0; v < 6; ++v) CHECK(st.graph.degree(v) == 2);
  CHECK(st.graph.connected());
  int roots = 0, leaves = 0, internal = 0;
  for (auto k : st.kind) {
    roots += k == StarVertexKind::Root;
    leaves += k == StarVertexKind::EdgeLeaf;
    internal += k == StarVertexKind::Internal;
  }
  CHECK(roots == 3);
  CHECK(leaves == 3);
  CHECK(internal == 0);
  for (int e = 0; e < st.network.edge_count(); ++e)
    CHECK(st.network.resistance(e) == doctest::Approx(0.5));
  for (Vertex v = 0; v < 6; ++v) CHECK(st.mark[std::size_t(v)] == 2);
}

TEST_CASE("four-leaf star: balanced codes in rotation order") {
  // K_{1,4}: center 0, leaves 1..4.
  const PlanarGraph g(5, {{1, 2, 3, 4}, {0}, {0}, {0}, {0}});
  const pll::StarTransform st = star_tree_transform(g);
  // 5 roots + 4 edge leaves + 2 internal vertices of the center's tree.
  CHECK(st.graph.vertex_count() == 11);
  int internal = 0;
  for (auto k : st.kind) internal += k == StarVertexKind::Internal;
  CHECK(internal == 2);

  // The centre's four leaves read 00, 01, 10, 11 in rotation order.
  const auto& inc = g.incident_edge_ids(0);
  REQUIRE(inc.size() == 4);
  for (int i = 0; i < 4; ++i) {
    const int e = inc[std::size_t(i)];
    const pll::Edge ed = g.edges()[std::size_t(e)];
    const int side = ed.u == 0 ? 0 : 1;  // code slot of the centre endpoint
    const std::string expect = std::string(1, char('0' + i / 2)) + char('0' + i % 2);
    CHECK(st.leaf_code[std::size_t(e)][std::size_t(side)] == expect);
    // Each leaf vertex has degree 1, so its own code is the single step "0".
    CHECK(st.leaf_code[std::size_t(e)][std::size_t(1 - side)] == "0");
  }

  // Marks: deg(v) on trees, max of the endpoint degrees on shared leaves.
  CHECK(st.mark[0] == 4);
  for (Vertex v = 1; v <= 4; ++v) CHECK(st.mark[std::size_t(v)] == 1);
  for (int e = 0; e < 4; ++e) CHECK(st.mark[std::size_t(st.edge_vertex(e))] == 4);
  for (Vertex v = 0; v < st.graph.vertex_count(); ++v)
    if (st.kind[std::size_t(v)] == StarVertexKind::Internal)
      CHECK(st.mark[std::size_t(v)] == 4);

  // Tree edges carry 1/deg(owner).
  for (int e = 0; e < st.network.edge_count(); ++e) {
    const pll::Edge ed = st.graph.edges()[std::size_t(e)];
    int owner = -1;
    for (Vertex v : {ed.u, ed.v})
      if (st.owner[std::size_t(v)] >= 0) owner = st.owner[std::size_t(v)];
    REQUIRE(owner >= 0);
    CHECK(st.network.resistance(e) == doctest::Approx(1.0 / g.degree(owner)));
  }
}

TEST_CASE("lift on the four-leaf star: frozen energies") {
  const PlanarGraph g(5, {{1, 2, 3, 4}, {0}, {0}, {0}, {0}});
  const pll::StarTransform st = star_tree_transform(g);
  pll::Flow theta;
  theta.value.assign(std::size_t(g.edge_count()), 0.0);
  const int e01 = g.edge_id(0, 1);
  // Unit flow from leaf 1 into the centre: +1 along edge (0,1) toward 0.
  theta.value[std::size_t(e01)] = g.edges()[std::size_t(e01)].u == 1 ? 1.0 : -1.0;
  theta.source = {1};
  theta.sink = {0};
  const pll::LiftedFlow lift = pll::lift_flow(st, theta);
  CHECK(lift.energy_base == doctest::Approx(1.0));
  CHECK(lift.energy_subdivided == doctest::Approx(2.0));
  CHECK(lift.energy_transformed == doctest::Approx(1.5));
  CHECK(pll::max_interior_divergence(st.network, lift.transformed) <= 1e-12);
}

TEST_CASE("transform bookkeeping: parents, children, owners") {
  pll::Rng rng(62, 0);
  const PlanarGraph g = support::random_planar_subgraph(rng, 30, 2000, 0.25);
  const pll::StarTransform st = star_tree_transform(g);
  const int n = g.vertex_count(), m = g.edge_count();
  int expected_internal = 0;
  for (Vertex v = 0; v < n; ++v) expected_internal += std::max(g.degree(v) - 2, 0);
  CHECK(st.graph.vertex_count() == n + m + expected_internal);

  for (Vertex v = 0; v < st.graph.vertex_count(); ++v) {
    const StarVertexKind k = st.kind[std::size_t(v)];
    if (k == StarVertexKind::Root) {
      CHECK(v < n);
      CHECK(st.owner[std::size_t(v)] == v);
      CHECK(st.parent_of[std::size_t(v)] == -1);
      CHECK(st.code[std::size_t(v)].empty());
    } else if (k == StarVertexKind::EdgeLeaf) {
      const int e = st.origin_edge[std::size_t(v)];
      REQUIRE(e >= 0);
      CHECK(st.edge_vertex(e) == v);
      CHECK(st.children[std::size_t(v)] == std::array<int, 2>{-1, -1});
      // Two parents, one in each endpoint tree.
      const auto [pu, pv] = st.leaf_parents[std::size_t(e)];
      const pll::Edge ed = g.edges()[std::size_t(e)];
      CHECK(st.owner[std::size_t(pu)] == ed.u);
      CHECK(st.owner[std::size_t(pv)] == ed.v);
      CHECK(st.graph.adjacent(v, pu));
      CHECK(st.graph.adjacent(v, pv));
    } else {
      const int owner = st.owner[std::size_t(v)];
      REQUIRE(owner >= 0);
      // Walking parents reaches the owning root, matching the code length.
      int up = v, hops = 0;
      while (st.parent_of[std::size_t(up)] != -1) {
        up = st.parent_of[std::size_t(up)];
        ++hops;
      }
      CHECK(up == owner);
      CHECK(hops == int(st.code[std::size_t(v)].size()));
    }
  }

  // Max degree 3: roots have at most two children, internals parent + two,
  // leaves two parents.
  for (Vertex v = 0; v < st.graph.vertex_count(); ++v) CHECK(st.graph.degree(v) <= 3);
  CHECK(st.graph.planar_embedding());
}

TEST_CASE("tree sizes: deg-d rosters get d leaves and depth ceil(log2 d)") {
  const PlanarGraph g(6, {{1, 2, 3, 4, 5}, {0}, {0}, {0}, {0}, {0}});  // K_{1,5}
  const pll::StarTransform st = star_tree_transform(g);
  // Codes of the five leaves in 0's tree must have length ceil(log2 5) = 3
  // or 2 (balanced tree: depths differ by at most one).
  for (int e = 0; e < 5; ++e) {
    const std::size_t len = st.leaf_code[std::size_t(e)][0].size();
    CHECK(len >= 2);
    CHECK(len <= 3);
  }
}

TEST_CASE("energy doubling and the 4x bound on random planar flows") {
  pll::Rng rng(63, 0);
  for (int t = 0; t < 12; ++t) {
    const PlanarGraph g = support::random_planar_subgraph(rng, 20 + int(rng.below(40)), 3000, 0.2);
    const pll::Network base = pll::Network::unit(g);
    const Vertex a = Vertex(rng.below(std::uint32_t(g.vertex_count())));
    Vertex z = Vertex(rng.below(std::uint32_t(g.vertex_count() - 1)));
    if (z >= a) ++z;
    const pll::Flow theta = pll::unit_current_flow(base, {a}, {z});
    const pll::StarTransform st = star_tree_transform(g);
    const pll::LiftedFlow lift = pll::lift_flow(st, theta);
    CHECK(std::abs(lift.energy_subdivided - 2.0 * lift.energy_base) <=
          1e-12 * std::max(1.0, lift.energy_base));
    CHECK(lift.energy_transformed <= 4.0 * lift.energy_base * (1.0 + 1e-12));
    CHECK(pll::max_interior_divergence(pll::Network::unit(st.subdivision.graph),
                                       lift.subdivided) <= 1e-9);
    CHECK(pll::max_interior_divergence(st.network, lift.transformed) <= 1e-9);
    // The lifted flows still move one unit from a to z.
    CHECK(pll::flow_divergence(st.network, lift.transformed, a) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(pll::flow_divergence(st.network, lift.transformed, z) ==
          doctest::Approx(-1.0).epsilon(1e-9));
  }
}

TEST_CASE("sphere triangulations keep a consistent embedding") {
  const PlanarGraph g = pll::flip_mcmc_triangulation(24, 4000, 5);
  const pll::StarTransform st = star_tree_transform(g);
  CHECK(st.graph.planar_embedding());
  CHECK(st.graph.connected());
}

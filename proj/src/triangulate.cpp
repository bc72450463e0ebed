#include "pll/triangulate.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace pll {

namespace {

std::uint64_t pair_key(Vertex a, Vertex b) {
  return (std::uint64_t(std::uint32_t(a)) << 32) | std::uint64_t(std::uint32_t(b));
}

std::uint64_t edge_key(Vertex a, Vertex b) {
  return pair_key(std::min(a, b), std::max(a, b));
}

// Two-pointer triangle strip over polygon positions 0..m-1; triples are
// listed in the polygon's walk orientation (ascending positions).
std::vector<std::array<int, 3>> zigzag_triples(int m) {
  std::vector<std::array<int, 3>> t;
  int lo = 0, hi = m - 1;
  bool low_side = true;
  while (hi - lo >= 2) {
    if (low_side) {
      t.push_back({lo, lo + 1, hi});
      ++lo;
    } else {
      t.push_back({lo, hi - 1, hi});
      --hi;
    }
    low_side = !low_side;
  }
  return t;
}

PlanarGraph lone_triangle_completion(const PlanarGraph& g, ZigzagResult& report) {
  // One or two vertices cannot host a triangulated face; complete to K3.
  std::vector<std::vector<Vertex>> rot{{1, 2}, {2, 0}, {0, 1}};
  report.added_vertices = 3 - g.vertex_count();
  report.max_degree_after = 2;
  return PlanarGraph(3, std::move(rot));
}

}  // namespace

ZigzagResult triangulate_zigzag(const PlanarGraph& g) {
  if (!g.simple()) throw std::invalid_argument("triangulate_zigzag: graph must be simple");
  if (!g.connected()) throw std::invalid_argument("triangulate_zigzag: graph must be connected");

  ZigzagResult report;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    report.max_degree_before = std::max(report.max_degree_before, g.degree(v));

  if (g.vertex_count() <= 2) {
    report.graph = lone_triangle_completion(g, report);
    return report;
  }
  if (!g.planar_embedding())
    throw std::invalid_argument("triangulate_zigzag: rotation system fails the Euler check");

  std::vector<std::vector<Vertex>> rot = g.rotations();
  std::unordered_set<std::uint64_t> edge_set;
  edge_set.reserve(std::size_t(g.edge_count()) * 4);
  for (const Edge& ed : g.edges()) edge_set.insert(edge_key(ed.u, ed.v));

  const auto faces = g.faces();
  Vertex next_id = g.vertex_count();

  // Splice `fan` into rot[v] directly after the adjacent pair (from, to):
  // rot[v] = [..., from, to, ...] becomes [..., from, fan..., to, ...].
  // When deg(v) == 1, from == to and the fan simply follows the lone entry.
  const auto splice = [&rot](Vertex v, Vertex from, Vertex to, const std::vector<Vertex>& fan) {
    if (fan.empty()) return;
    auto& r = rot[v];
    const int d = int(r.size());
    for (int i = 0; i < d; ++i) {
      if (r[i] == from && r[(i + 1) % d] == to) {
        r.insert(r.begin() + i + 1, fan.begin(), fan.end());
        return;
      }
    }
    throw std::logic_error("triangulate_zigzag: corner pair not adjacent in rotation");
  };

  for (const auto& face : faces) {
    const int m = int(face.size());
    if (m == 3) continue;
    if (m < 3) throw std::logic_error("triangulate_zigzag: degenerate face walk");

    // Anchor the walk at its smallest vertex (first occurrence).
    std::vector<Vertex> fc = face;
    std::rotate(fc.begin(), std::min_element(fc.begin(), fc.end()), fc.end());

    bool simple_face = true;
    {
      std::vector<Vertex> sorted(fc);
      std::sort(sorted.begin(), sorted.end());
      simple_face = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    }

    // All triangles of this face, oriented with the face walk.
    std::vector<std::array<Vertex, 3>> triangles;
    std::vector<Vertex> ring;  // fresh vertices when ring insertion is used

    bool by_chords = simple_face;
    if (by_chords) {
      const auto triples = zigzag_triples(m);
      std::vector<std::uint64_t> chords;
      for (const auto& t : triples)
        for (int s = 0; s < 3; ++s) {
          const int lo = std::min(t[s], t[(s + 1) % 3]);
          const int hi = std::max(t[s], t[(s + 1) % 3]);
          const bool polygon_side = (hi - lo == 1) || (lo == 0 && hi == m - 1);
          if (!polygon_side) chords.push_back(edge_key(fc[lo], fc[hi]));
        }
      std::sort(chords.begin(), chords.end());
      chords.erase(std::unique(chords.begin(), chords.end()), chords.end());
      for (const std::uint64_t c : chords)
        if (edge_set.count(c)) {
          by_chords = false;
          break;
        }
      if (by_chords) {
        for (const std::uint64_t c : chords) edge_set.insert(c);
        for (const auto& t : triples) triangles.push_back({fc[t[0]], fc[t[1]], fc[t[2]]});
        ++report.zigzag_faces;
      }
    }

    if (!by_chords) {
      // Ring insertion: a fresh inner cycle c_0..c_{m-1}; the band between
      // the walk and the ring is two triangles per position, and the ring
      // itself (simple, all-new) is zigzagged without any conflict checks.
      ring.resize(m);
      for (int i = 0; i < m; ++i) ring[i] = next_id++;
      rot.resize(next_id);
      for (int i = 0; i < m; ++i) {
        const int j = (i + 1) % m;
        triangles.push_back({fc[i], fc[j], ring[i]});
        triangles.push_back({ring[i], fc[j], ring[j]});
        edge_set.insert(edge_key(fc[i], ring[i]));
        edge_set.insert(edge_key(fc[j], ring[i]));
        edge_set.insert(edge_key(ring[i], ring[j]));
      }
      for (const auto& t : zigzag_triples(m)) {
        triangles.push_back({ring[t[0]], ring[t[1]], ring[t[2]]});
        for (int s = 0; s < 3; ++s) {
          const int lo = std::min(t[s], t[(s + 1) % 3]);
          const int hi = std::max(t[s], t[(s + 1) % 3]);
          if (!((hi - lo == 1) || (lo == 0 && hi == m - 1)))
            edge_set.insert(edge_key(ring[lo], ring[hi]));
        }
      }
      ++report.ring_faces;
    }

    // Pivot successors: triangle (p, q, r) in walk orientation means that at
    // p, rotating across this triangle from q lands on r.
    std::unordered_map<std::uint64_t, Vertex> succ;
    succ.reserve(triangles.size() * 4);
    for (const auto& t : triangles) {
      succ[pair_key(t[0], t[1])] = t[2];
      succ[pair_key(t[1], t[2])] = t[0];
      succ[pair_key(t[2], t[0])] = t[1];
    }
    const auto chain_next = [&succ](Vertex v, Vertex x) {
      const auto it = succ.find(pair_key(v, x));
      if (it == succ.end())
        throw std::logic_error("triangulate_zigzag: broken pivot chain");
      return it->second;
    };

    // Original corners: open fan from the outgoing to the incoming walk
    // neighbor, spliced into the existing rotation.
    for (int l = 0; l < m; ++l) {
      const Vertex v = fc[l];
      const Vertex from = fc[(l + 1) % m];
      const Vertex to = fc[(l + m - 1) % m];
      std::vector<Vertex> fan;
      Vertex cur = chain_next(v, from);
      int guard = 0;
      while (cur != to) {
        fan.push_back(cur);
        cur = chain_next(v, cur);
        if (++guard > m + 4) throw std::logic_error("triangulate_zigzag: unterminated fan");
      }
      splice(v, from, to, fan);
    }

    // Ring vertices: their whole rotation is one closed fan.
    for (int i = 0; i < int(ring.size()); ++i) {
      const Vertex c = ring[i];
      const Vertex start = fc[i];  // the w_i spoke
      std::vector<Vertex> r{start};
      Vertex cur = chain_next(c, start);
      int guard = 0;
      while (cur != start) {
        r.push_back(cur);
        cur = chain_next(c, cur);
        if (++guard > m + 8) throw std::logic_error("triangulate_zigzag: unterminated ring fan");
      }
      rot[c] = std::move(r);
    }
  }

  report.graph = PlanarGraph(next_id, std::move(rot));
  report.added_vertices = next_id - g.vertex_count();
  for (Vertex v = 0; v < report.graph.vertex_count(); ++v)
    report.max_degree_after = std::max(report.max_degree_after, report.graph.degree(v));
  return report;
}

}  // namespace pll

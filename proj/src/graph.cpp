#include "pll/graph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace pll {

PlanarGraph::PlanarGraph(int n, std::vector<std::vector<Vertex>> rot, bool simple)
    : rot_(std::move(rot)), simple_(simple) {
  if (n < 0 || int(rot_.size()) != n)
    throw std::invalid_argument("PlanarGraph: rotation table size must equal n");
  // Count (u, v) incidences so we can check symmetry without assuming
  // simplicity: v must occur in rot[u] exactly as often as u in rot[v].
  std::vector<std::vector<std::pair<Vertex, int>>> counts(n);
  for (Vertex u = 0; u < n; ++u) {
    std::vector<Vertex> seen = rot_[u];
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 0; i < seen.size(); ++i) {
      const Vertex v = seen[i];
      if (v < 0 || v >= n) throw std::invalid_argument("PlanarGraph: neighbor out of range");
      if (v == u) throw std::invalid_argument("PlanarGraph: self-loops are not allowed");
      if (simple_ && i + 1 < seen.size() && seen[i + 1] == v)
        throw std::invalid_argument("PlanarGraph: repeated neighbor in a simple graph");
      if (!counts[u].empty() && counts[u].back().first == v)
        ++counts[u].back().second;
      else
        counts[u].push_back({v, 1});
    }
  }
  for (Vertex u = 0; u < n; ++u)
    for (const auto& [v, c] : counts[u]) {
      const auto& cv = counts[v];
      auto it = std::lower_bound(cv.begin(), cv.end(), u,
                                 [](const auto& p, Vertex x) { return p.first < x; });
      if (it == cv.end() || it->first != u || it->second != c)
        throw std::invalid_argument("PlanarGraph: adjacency is not symmetric");
    }
  build_edges();
}

void PlanarGraph::build_edges() {
  const int n = vertex_count();
  inc_.assign(n, {});
  // Pair up the k-th occurrence of v in rot[u] with the k-th occurrence of
  // u in rot[v]; for simple graphs k is always 0.
  std::vector<std::vector<int>> used(n);
  for (Vertex u = 0; u < n; ++u) {
    inc_[u].assign(rot_[u].size(), -1);
    used[u].assign(rot_[u].size(), 0);
  }
  for (Vertex u = 0; u < n; ++u) {
    for (std::size_t i = 0; i < rot_[u].size(); ++i) {
      if (inc_[u][i] >= 0) continue;
      const Vertex v = rot_[u][i];
      const int id = int(edges_.size());
      edges_.push_back({std::min(u, v), std::max(u, v)});
      inc_[u][i] = id;
      for (std::size_t j = 0; j < rot_[v].size(); ++j)
        if (rot_[v][j] == u && inc_[v][j] < 0) {
          inc_[v][j] = id;
          break;
        }
    }
  }
}

int PlanarGraph::edge_id(Vertex u, Vertex v) const {
  if (u < 0 || u >= vertex_count() || v < 0 || v >= vertex_count()) return -1;
  if (rot_[u].size() > rot_[v].size()) std::swap(u, v);
  for (std::size_t i = 0; i < rot_[u].size(); ++i)
    if (rot_[u][i] == v) return inc_[u][i];
  return -1;
}

std::vector<std::vector<Vertex>> PlanarGraph::faces() const {
  if (!simple_) throw std::invalid_argument("faces: rotation tracing requires a simple graph");
  const int n = vertex_count();
  // Index neighbors: for each v, a sorted (neighbor, position) list, so the
  // "predecessor of u in the rotation at v" step is a binary search.
  std::vector<std::vector<std::pair<Vertex, int>>> idx(n);
  for (Vertex v = 0; v < n; ++v) {
    idx[v].reserve(rot_[v].size());
    for (std::size_t i = 0; i < rot_[v].size(); ++i) idx[v].push_back({rot_[v][i], int(i)});
    std::sort(idx[v].begin(), idx[v].end());
  }
  auto position = [&](Vertex v, Vertex u) {
    auto it = std::lower_bound(idx[v].begin(), idx[v].end(), std::make_pair(u, -1));
    return it->second;
  };

  std::vector<std::vector<char>> seen(n);
  for (Vertex v = 0; v < n; ++v) seen[v].assign(rot_[v].size(), 0);
  std::vector<std::vector<Vertex>> result;
  for (Vertex u = 0; u < n; ++u) {
    for (std::size_t i = 0; i < rot_[u].size(); ++i) {
      if (seen[u][i]) continue;  // directed edge (u -> rot[u][i]) already traced
      std::vector<Vertex> walk;
      Vertex a = u;
      int ai = int(i);
      while (!seen[a][ai]) {
        seen[a][ai] = 1;
        const Vertex b = rot_[a][ai];
        walk.push_back(a);
        // Next directed edge: (b -> w) where w immediately precedes a in
        // the counterclockwise rotation at b.
        const int pa = position(b, a);
        const int pw = (pa + int(rot_[b].size()) - 1) % int(rot_[b].size());
        a = b;
        ai = pw;
      }
      result.push_back(std::move(walk));
    }
  }
  return result;
}

bool PlanarGraph::planar_embedding() const {
  if (!connected()) return false;
  const long long v = vertex_count();
  const long long e = edge_count();
  const long long f = (long long)faces().size();
  return v - e + f == 2;
}

bool PlanarGraph::connected() const {
  const int n = vertex_count();
  if (n == 0) return true;
  const auto dist = bfs_distances(0);
  for (int v = 0; v < n; ++v)
    if (dist[v] < 0) return false;
  return true;
}

std::vector<int> PlanarGraph::bfs_distances(Vertex root) const {
  const int n = vertex_count();
  if (root < 0 || root >= n) throw std::invalid_argument("bfs_distances: root out of range");
  std::vector<int> dist(n, -1);
  std::queue<Vertex> q;
  dist[root] = 0;
  q.push(root);
  while (!q.empty()) {
    const Vertex v = q.front();
    q.pop();
    for (const Vertex w : rot_[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
  }
  return dist;
}

Ball ball(const PlanarGraph& g, Vertex root, int radius) {
  if (radius < 0) throw std::invalid_argument("ball: radius must be nonnegative");
  if (root < 0 || root >= g.vertex_count()) throw std::invalid_argument("ball: root out of range");
  const int n = g.vertex_count();
  std::vector<int> dist(n, -1), newid(n, -1);
  std::vector<Vertex> members;
  std::queue<Vertex> q;
  dist[root] = 0;
  q.push(root);
  members.push_back(root);
  while (!q.empty()) {
    const Vertex v = q.front();
    q.pop();
    if (dist[v] == radius) continue;
    for (const Vertex w : g.neighbors(v))
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
        members.push_back(w);
      }
  }
  for (std::size_t i = 0; i < members.size(); ++i) newid[members[i]] = int(i);
  std::vector<std::vector<Vertex>> rot(members.size());
  for (std::size_t i = 0; i < members.size(); ++i)
    for (const Vertex w : g.neighbors(members[i]))
      if (newid[w] >= 0) rot[i].push_back(newid[w]);
  Ball b;
  b.graph = PlanarGraph(int(members.size()), std::move(rot), g.simple());
  b.root = 0;
  b.radius = radius;
  b.parent_vertex = std::move(members);
  return b;
}

}  // namespace pll

#include "pll/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "pll/rng.hpp"

namespace pll {

PlanarGraph path_graph(int n) {
  if (n < 1) throw std::invalid_argument("path_graph: need n >= 1");
  std::vector<std::vector<Vertex>> rot(n);
  for (int i = 0; i + 1 < n; ++i) {
    rot[i].push_back(i + 1);
    rot[i + 1].insert(rot[i + 1].begin(), i);
  }
  return PlanarGraph(n, rot);
}

PlanarGraph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle_graph: need n >= 3");
  std::vector<std::vector<Vertex>> rot(n);
  for (int i = 0; i < n; ++i) rot[i] = {(i + n - 1) % n, (i + 1) % n};
  return PlanarGraph(n, rot);
}

PlanarGraph grid_graph(int width, int height) {
  if (width < 1 || height < 1) throw std::invalid_argument("grid_graph: need positive sides");
  std::vector<std::vector<Vertex>> rot(std::size_t(width) * height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      auto& r = rot[std::size_t(y) * width + x];
      if (x + 1 < width) r.push_back(y * width + x + 1);   // east
      if (y + 1 < height) r.push_back((y + 1) * width + x);  // north
      if (x > 0) r.push_back(y * width + x - 1);            // west
      if (y > 0) r.push_back((y - 1) * width + x);          // south
    }
  return PlanarGraph(width * height, rot);
}

PlanarGraph binary_tree(int height) {
  if (height < 0) throw std::invalid_argument("binary_tree: need height >= 0");
  if (height > 24) throw std::invalid_argument("binary_tree: height too large");
  const int n = (1 << (height + 1)) - 1;
  const int first_leaf = (1 << height) - 1;
  std::vector<std::vector<Vertex>> rot(n);
  for (int i = 0; i < n; ++i) {
    if (i > 0) rot[i].push_back((i - 1) / 2);
    if (i < first_leaf) {
      rot[i].push_back(2 * i + 1);
      rot[i].push_back(2 * i + 2);
    }
  }
  return PlanarGraph(n, rot);
}

PlanarGraph tetrahedron() {
  std::vector<std::vector<Vertex>> rot = {{1, 3, 2}, {2, 3, 0}, {0, 3, 1}, {0, 1, 2}};
  return PlanarGraph(4, rot);
}

TriangularDisk triangular_disk(int radius) {
  if (radius < 0) throw std::invalid_argument("triangular_disk: need radius >= 0");
  if (radius > 600) throw std::invalid_argument("triangular_disk: radius too large");
  const int r = radius;
  const int side = 2 * r + 1;
  std::vector<int> id_of(std::size_t(side) * side, -1);
  auto slot = [&](int a, int b) -> int& { return id_of[std::size_t(a + r) * side + (b + r)]; };
  auto inside = [&](int a, int b) {
    return std::abs(a) <= r && std::abs(b) <= r && std::abs(a + b) <= r;
  };

  TriangularDisk out;
  int n = 0;
  for (int a = -r; a <= r; ++a)
    for (int b = -r; b <= r; ++b)
      if (inside(a, b)) {
        slot(a, b) = n++;
        out.axial.push_back({a, b});
      }

  // Counterclockwise neighbor directions in the standard axial embedding
  // (a, b) -> a * (1, 0) + b * (1/2, sqrt(3)/2).
  static const int dirs[6][2] = {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
  std::vector<std::vector<Vertex>> rot(n);
  for (int v = 0; v < n; ++v) {
    const auto [a, b] = out.axial[std::size_t(v)];
    for (const auto& d : dirs)
      if (inside(a + d[0], b + d[1])) rot[std::size_t(v)].push_back(slot(a + d[0], b + d[1]));
  }
  out.graph = PlanarGraph(n, rot);
  out.center = slot(0, 0);

  if (r >= 1) {
    // The outer face is the unique non-triangle; its trace runs clockwise,
    // so reverse it to give the boundary counterclockwise.
    for (const auto& f : out.graph.faces())
      if (f.size() != 3) {
        out.boundary.assign(f.rbegin(), f.rend());
        break;
      }
    if (out.boundary.size() != std::size_t(6 * r))
      throw std::logic_error("triangular_disk: unexpected boundary length");
  }
  return out;
}

long bundle_width(int k, double alpha) {
  if (k < 1) throw std::invalid_argument("bundle_width: need k >= 1");
  if (!(alpha > 0.0) || !(alpha <= 1.0))
    throw std::invalid_argument("bundle_width: need alpha in (0, 1]");
  const double x = std::pow(double(k), 1.0 / alpha);
  // Nudge below so exactly-integer powers are not bumped up by roundoff.
  return long(std::ceil(x * (1.0 - 1e-12)));
}

namespace {

struct BundleBuilder {
  std::vector<std::vector<Vertex>> rot;
  int next_id;

  explicit BundleBuilder(int node_count) : rot(node_count), next_id(node_count) {}

  // Joins parent to child with `width` parallel two-edge paths.  Midpoints
  // are appended to the parent rotation in creation order and to the child
  // rotation in reverse, which nests the paths and keeps the graph planar.
  void connect(Vertex parent, Vertex child, long width) {
    std::vector<Vertex> mids;
    mids.reserve(std::size_t(width));
    for (long i = 0; i < width; ++i) {
      mids.push_back(next_id++);
      rot.push_back({parent, child});
    }
    rot[std::size_t(parent)].insert(rot[std::size_t(parent)].end(), mids.begin(), mids.end());
    rot[std::size_t(child)].insert(rot[std::size_t(child)].end(), mids.rbegin(), mids.rend());
  }
};

}  // namespace

BundledTree bundled_tree(int height, double alpha) {
  if (height < 1) throw std::invalid_argument("bundled_tree: need height >= 1");
  if (height > 20) throw std::invalid_argument("bundled_tree: height too large for the full tree");
  const int nodes = (1 << (height + 1)) - 1;
  BundleBuilder bb(nodes);
  // Process nodes in heap order so every parent's bundle groups are laid
  // down before its children's (the child sees its parent mids first, then
  // its own child bundles: parent group order is reversed there by design).
  for (int i = 0; i < nodes; ++i) {
    const int depth = [&] {
      int d = 0, j = i;
      while (j > 0) {
        j = (j - 1) / 2;
        ++d;
      }
      return d;
    }();
    if (depth == height) continue;  // leaf
    const long w = bundle_width(height - depth, alpha);
    bb.connect(i, 2 * i + 1, w);
    bb.connect(i, 2 * i + 2, w);
  }
  BundledTree out;
  out.network = Network::unit(PlanarGraph(bb.next_id, bb.rot));
  out.base_leaf = (1 << height) - 1;  // leftmost deepest leaf
  out.apex = 0;
  out.height = height;
  out.alpha = alpha;
  return out;
}

BundledTree bundled_tree_spine(int height, double alpha) {
  if (height < 1) throw std::invalid_argument("bundled_tree_spine: need height >= 1");
  if (height > 200) throw std::invalid_argument("bundled_tree_spine: height too large");
  // Spine nodes 0 (bottom leaf) .. height (apex); bundle k joins k-1 and k.
  BundleBuilder bb(height + 1);
  for (int k = 1; k <= height; ++k) bb.connect(k, k - 1, bundle_width(k, alpha));
  BundledTree out;
  out.network = Network::unit(PlanarGraph(bb.next_id, bb.rot));
  out.base_leaf = 0;
  out.apex = height;
  out.height = height;
  out.alpha = alpha;
  return out;
}

namespace {

int find_index(const std::vector<Vertex>& rot, Vertex x) {
  for (std::size_t i = 0; i < rot.size(); ++i)
    if (rot[i] == x) return int(i);
  throw std::logic_error("flip chain: rotation entry missing");
}

Vertex pred_in_rotation(const std::vector<Vertex>& rot, Vertex x) {
  const int i = find_index(rot, x);
  return rot[std::size_t((i + int(rot.size()) - 1) % int(rot.size()))];
}

}  // namespace

PlanarGraph flip_mcmc_triangulation(int n, std::int64_t steps, std::uint64_t seed,
                                    int max_degree) {
  if (n < 4) throw std::invalid_argument("flip_mcmc_triangulation: need n >= 4");
  if (steps < 0) throw std::invalid_argument("flip_mcmc_triangulation: need steps >= 0");

  std::vector<std::vector<Vertex>> rot(static_cast<std::size_t>(n));
  if (n == 4) {
    rot = {{1, 3, 2}, {2, 3, 0}, {0, 3, 1}, {0, 1, 2}};
  } else {
    // Bipyramid: poles 0 and 1 over the cycle 2..n-1.
    for (int v = 2; v < n; ++v) rot[0].push_back(v);
    for (int v = n - 1; v >= 2; --v) rot[1].push_back(v);
    for (int v = 2; v < n; ++v) {
      const int prev = v == 2 ? n - 1 : v - 1;
      const int next = v == n - 1 ? 2 : v + 1;
      rot[std::size_t(v)] = {prev, 1, next, 0};
    }
  }

  // Edge list (positions are proposal slots, replaced in place on a flip)
  // and a hash set for existence checks.
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::unordered_set<std::uint64_t> edge_set;
  auto key = [n](Vertex a, Vertex b) {
    if (a > b) std::swap(a, b);
    return std::uint64_t(a) * std::uint64_t(n) + std::uint64_t(b);
  };
  for (int v = 0; v < n; ++v)
    for (const Vertex w : rot[std::size_t(v)])
      if (v < w) {
        edges.push_back({v, w});
        edge_set.insert(key(v, w));
      }

  Rng rng(seed);
  for (std::int64_t step = 0; step < steps; ++step) {
    const std::size_t pick = std::size_t(rng.below(std::uint64_t(edges.size())));
    const auto [u, v] = edges[pick];
    // Opposite corners of the two triangles at (u, v).
    const Vertex x = pred_in_rotation(rot[std::size_t(v)], u);
    const Vertex y = pred_in_rotation(rot[std::size_t(u)], v);
    if (x == y) continue;
    if (edge_set.count(key(x, y))) continue;
    if (max_degree > 0 && (int(rot[std::size_t(x)].size()) + 1 > max_degree ||
                           int(rot[std::size_t(y)].size()) + 1 > max_degree))
      continue;

    // Remove (u, v).
    auto& ru = rot[std::size_t(u)];
    auto& rv = rot[std::size_t(v)];
    ru.erase(ru.begin() + find_index(ru, v));
    rv.erase(rv.begin() + find_index(rv, u));
    // rot[x] reads ..., u, v, ... around the flipped quadrilateral: insert y
    // between them; likewise x goes between v and u at y.
    auto& rx = rot[std::size_t(x)];
    rx.insert(rx.begin() + find_index(rx, v), y);
    auto& ry = rot[std::size_t(y)];
    ry.insert(ry.begin() + find_index(ry, u), x);

    edges[pick] = {std::min(x, y), std::max(x, y)};
    edge_set.erase(key(u, v));
    edge_set.insert(key(x, y));
  }
  return PlanarGraph(n, rot);
}

bool is_sphere_triangulation(const PlanarGraph& g) {
  if (!g.simple() || g.vertex_count() < 3) return false;
  if (!g.connected() || !g.planar_embedding()) return false;
  for (const auto& f : g.faces())
    if (f.size() != 3) return false;
  return true;
}

}  // namespace pll

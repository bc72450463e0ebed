#include "pll/packing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>

#include "pll/electric.hpp"

namespace pll {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Angle at the center-v corner of the triangle formed by three mutually
// tangent circles of radii (rv; ru, rw): the half-angle satisfies
// sin^2 = ru rw / ((rv + ru)(rv + rw)).
double corner_angle(double rv, double ru, double rw) {
  const double s2 = (ru * rw) / ((rv + ru) * (rv + rw));
  return 2.0 * std::asin(std::sqrt(std::min(1.0, std::max(0.0, s2))));
}

// Cyclic angle sum at v from radii alone.
double radii_angle_sum(const PlanarGraph& g, const std::vector<double>& r, Vertex v) {
  const auto& nbr = g.neighbors(v);
  const int d = int(nbr.size());
  double sum = 0.0;
  for (int i = 0; i < d; ++i) sum += corner_angle(r[v], r[nbr[i]], r[nbr[(i + 1) % d]]);
  return sum;
}

// Does `face` equal `cycle` as a cyclic sequence, forwards or backwards?
bool same_cycle(const std::vector<Vertex>& face, const std::vector<Vertex>& cycle) {
  const int m = int(face.size());
  if (int(cycle.size()) != m) return false;
  for (int shift = 0; shift < m; ++shift) {
    bool fwd = true, bwd = true;
    for (int i = 0; i < m && (fwd || bwd); ++i) {
      if (face[(shift + i) % m] != cycle[i]) fwd = false;
      if (face[(shift + m - i) % m] != cycle[i]) bwd = false;
    }
    if (fwd || bwd) return true;
  }
  return false;
}

}  // namespace

double angle_sum(const CirclePacking& p, Vertex v) {
  if (v < 0 || v >= p.graph.vertex_count())
    throw std::invalid_argument("angle_sum: vertex out of range");
  return radii_angle_sum(p.graph, p.radius, v);
}

PackingResult pack_triangulation(const PlanarGraph& tri, const std::vector<Vertex>& outer,
                                 const std::vector<double>& boundary_radii, double tol,
                                 int max_iterations) {
  const int n = tri.vertex_count();
  if (!tri.simple()) throw std::invalid_argument("pack_triangulation: graph must be simple");
  if (!tri.connected() || !tri.planar_embedding())
    throw std::invalid_argument("pack_triangulation: rotation system is not a planar embedding");
  if (outer.size() < 3 || outer.size() != boundary_radii.size())
    throw std::invalid_argument(
        "pack_triangulation: outer face needs >= 3 vertices with one radius each");
  for (const double r : boundary_radii)
    if (!(r > 0.0) || !std::isfinite(r))
      throw std::invalid_argument("pack_triangulation: boundary radii must be positive");
  if (tol <= 0.0 || max_iterations < 0)
    throw std::invalid_argument("pack_triangulation: bad tolerance or iteration cap");

  const auto faces = tri.faces();
  int outer_face = -1;
  for (int f = 0; f < int(faces.size()); ++f)
    if (same_cycle(faces[f], outer)) {
      outer_face = f;
      break;
    }
  if (outer_face < 0)
    throw std::invalid_argument("pack_triangulation: outer cycle is not a face of the embedding");
  for (int f = 0; f < int(faces.size()); ++f)
    if (f != outer_face && faces[f].size() != 3)
      throw std::invalid_argument("pack_triangulation: a non-outer face is not a triangle");

  std::vector<char> on_boundary(n, 0);
  std::vector<double> radius(n, 0.0);
  double mean_boundary = 0.0;
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const Vertex v = outer[i];
    if (on_boundary[v])
      throw std::invalid_argument("pack_triangulation: outer cycle repeats a vertex");
    on_boundary[v] = 1;
    radius[v] = boundary_radii[i];
    mean_boundary += boundary_radii[i];
  }
  mean_boundary /= double(outer.size());
  std::vector<Vertex> interior;
  for (Vertex v = 0; v < n; ++v)
    if (!on_boundary[v]) {
      interior.push_back(v);
      radius[v] = mean_boundary;
    }

  // Radius iteration: Gauss-Seidel sweeps of the uniform-neighbor update,
  // with an error-ratio superstep (geometric extrapolation) and rollback
  // when a superstep overshoots.
  const auto sweep_error = [&]() {
    double err = 0.0;
    for (const Vertex v : interior)
      err = std::max(err, std::abs(radii_angle_sum(tri, radius, v) - kTwoPi));
    return err;
  };
  const auto sweep = [&]() {
    double err = 0.0;
    for (const Vertex v : interior) {
      const int k = tri.degree(v);
      const double theta = radii_angle_sum(tri, radius, v);
      err = std::max(err, std::abs(theta - kTwoPi));
      // Radius of the uniform neighbor reproducing theta, then the radius
      // that would make k such neighbors subtend exactly 2 pi.
      const double beta = std::sin(theta / (2.0 * k));
      const double hat = radius[v] * beta / (1.0 - beta);
      const double delta = std::sin(std::numbers::pi / k);
      radius[v] = hat * (1.0 - delta) / delta;
    }
    return err;
  };

  int iterations = 0;
  double err = interior.empty() ? 0.0 : sweep_error();
  std::vector<double> prev(radius), saved;
  int cooldown = 0;
  while (err > tol) {
    if (iterations >= max_iterations)
      throw std::runtime_error("pack_triangulation: radius iteration did not converge");
    prev = radius;
    const double before = err;
    sweep();
    ++iterations;
    err = sweep_error();
    if (err <= tol) break;
    const double lambda = before > 0.0 ? err / before : 0.0;
    if (cooldown > 0) --cooldown;
    if (cooldown == 0 && lambda > 0.0 && lambda < 0.98) {
      const double factor = lambda / (1.0 - lambda);
      saved = radius;
      bool ok = true;
      for (const Vertex v : interior) {
        radius[v] += factor * (radius[v] - prev[v]);
        if (!(radius[v] > 0.0) || !std::isfinite(radius[v])) {
          ok = false;
          break;
        }
      }
      if (ok) {
        const double boosted = sweep_error();
        if (boosted < err) {
          err = boosted;
        } else {
          radius = saved;  // superstep overshot; settle down for a while
          cooldown = 4;
        }
      } else {
        radius = saved;
        cooldown = 4;
      }
    }
  }

  // Layout: place one interior face, then walk the face adjacency breadth-
  // first, placing the third circle of each face from its two placed ones.
  PackingResult result;
  result.iterations = iterations;
  result.angle_error = interior.empty() ? 0.0 : sweep_error();
  CirclePacking& p = result.packing;
  p.graph = tri;
  p.radius = radius;
  p.boundary = outer;
  p.center.assign(n, Point{});

  // Edge -> the (at most two) faces bordering it.
  std::vector<std::array<int, 2>> side(tri.edge_count(), {-1, -1});
  for (int f = 0; f < int(faces.size()); ++f) {
    const auto& fc = faces[f];
    for (std::size_t i = 0; i < fc.size(); ++i) {
      const int e = tri.edge_id(fc[i], fc[(i + 1) % fc.size()]);
      side[e][side[e][0] < 0 ? 0 : 1] = f;
    }
  }

  int start = outer_face == 0 ? 1 : 0;
  if (int(faces.size()) < 2)
    throw std::invalid_argument("pack_triangulation: embedding has no interior face");
  std::vector<char> placed(n, 0), visited(faces.size(), 0);
  {
    const auto& fc = faces[start];  // CCW triangle
    const Vertex a = fc[0], b = fc[1], c = fc[2];
    p.center[a] = {0.0, 0.0};
    p.center[b] = {radius[a] + radius[b], 0.0};
    const double alpha = corner_angle(radius[a], radius[b], radius[c]);
    p.center[c] = {(radius[a] + radius[c]) * std::cos(alpha),
                   (radius[a] + radius[c]) * std::sin(alpha)};
    placed[a] = placed[b] = placed[c] = 1;
  }
  std::queue<int> queue;
  queue.push(start);
  visited[start] = 1;
  if (outer_face >= 0) visited[outer_face] = 1;  // never lay out across the outer face
  while (!queue.empty()) {
    const int f = queue.front();
    queue.pop();
    const auto& fc = faces[f];
    int missing = -1;
    for (int i = 0; i < 3; ++i)
      if (!placed[fc[i]]) missing = i;
    if (missing >= 0) {
      const Vertex w = fc[missing];
      const Vertex a = fc[(missing + 1) % 3], b = fc[(missing + 2) % 3];
      // (a, b, w) is CCW, so w sits at angle +alpha_a from the ray a -> b.
      const double phi = std::atan2(p.center[b].y - p.center[a].y, p.center[b].x - p.center[a].x);
      const double alpha = corner_angle(radius[a], radius[b], radius[w]);
      const double d = radius[a] + radius[w];
      p.center[w] = {p.center[a].x + d * std::cos(phi + alpha),
                     p.center[a].y + d * std::sin(phi + alpha)};
      placed[w] = 1;
    }
    for (std::size_t i = 0; i < fc.size(); ++i) {
      const int e = tri.edge_id(fc[i], fc[(i + 1) % fc.size()]);
      for (const int g : side[e])
        if (g >= 0 && !visited[g]) {
          visited[g] = 1;
          queue.push(g);
        }
    }
  }
  for (Vertex v = 0; v < n; ++v)
    if (!placed[v]) throw std::runtime_error("pack_triangulation: layout left a vertex unplaced");

  result.tangency_error = tangency_error(p);
  return result;
}

double tangency_error(const CirclePacking& p) {
  double worst = 0.0;
  for (const Edge& ed : p.graph.edges()) {
    const double gap =
        distance(p.center[ed.u], p.center[ed.v]) - (p.radius[ed.u] + p.radius[ed.v]);
    worst = std::max(worst, std::abs(gap));
  }
  return worst;
}

double packing_overlap(const CirclePacking& p) {
  const int n = p.graph.vertex_count();
  double worst = 0.0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      if (p.graph.edge_id(u, v) >= 0) continue;
      const double depth = p.radius[u] + p.radius[v] - distance(p.center[u], p.center[v]);
      worst = std::max(worst, depth);
    }
  return std::max(0.0, worst);
}

CirclePacking normalize_at_root(const CirclePacking& p, Vertex root) {
  if (root < 0 || root >= p.graph.vertex_count())
    throw std::invalid_argument("normalize_at_root: root out of range");
  CirclePacking out = p;
  const Point c0 = p.center[root];
  const double scale = 1.0 / p.radius[root];
  for (std::size_t v = 0; v < out.center.size(); ++v) {
    out.center[v] = {(p.center[v].x - c0.x) * scale, (p.center[v].y - c0.y) * scale};
    out.radius[v] = p.radius[v] * scale;
  }
  return out;
}

RingRatio ring_ratio_audit(const CirclePacking& p) {
  std::vector<char> on_boundary(p.graph.vertex_count(), 0);
  for (const Vertex v : p.boundary) on_boundary[v] = 1;
  RingRatio audit;
  for (const Edge& ed : p.graph.edges()) {
    if (on_boundary[ed.u] || on_boundary[ed.v]) continue;
    const double q = p.radius[ed.u] / p.radius[ed.v];
    audit.max_ratio = std::max({audit.max_ratio, q, 1.0 / q});
  }
  for (Vertex v = 0; v < p.graph.vertex_count(); ++v)
    if (!on_boundary[v]) audit.interior_max_degree = std::max(audit.interior_max_degree, p.graph.degree(v));
  return audit;
}

bool region_contains(const Region& region, Point q) {
  if (const auto* d = std::get_if<DiskRegion>(&region))
    return distance(d->center, q) <= d->radius;
  if (const auto* a = std::get_if<AnnulusRegion>(&region)) {
    const double r = distance(a->center, q);
    return r > a->inner && r <= a->outer;
  }
  const auto& c = std::get<ComplementRegion>(region);
  return distance(c.center, q) > c.radius;
}

std::vector<Vertex> vertices_in_region(const CirclePacking& p, const Region& region) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < p.graph.vertex_count(); ++v)
    if (region_contains(region, p.center[v])) out.push_back(v);
  return out;
}

AnnulusProfile annulus_resistance_profile(const CirclePacking& p, const Network& net,
                                          Point center, const std::vector<double>& radii) {
  if (net.vertex_count() != p.graph.vertex_count() || net.edge_count() != p.graph.edge_count())
    throw std::invalid_argument("annulus_resistance_profile: packing and network differ");
  if (radii.size() < 2)
    throw std::invalid_argument("annulus_resistance_profile: need at least two radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0))
      throw std::invalid_argument("annulus_resistance_profile: radii must be positive");
    if (i > 0 && radii[i] <= radii[i - 1])
      throw std::invalid_argument("annulus_resistance_profile: radii must be increasing");
  }
  const auto inside = [&](double r) {
    return vertices_in_region(p, DiskRegion{center, r});
  };
  const auto outside = [&](double r) {
    return vertices_in_region(p, ComplementRegion{center, r});
  };
  AnnulusProfile profile;
  const std::vector<Vertex> core = inside(radii[0]);
  for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
    const std::vector<Vertex> A = inside(radii[i]);
    const std::vector<Vertex> Z = outside(radii[i + 1]);
    profile.consecutive.push_back(A.empty() || Z.empty()
                                      ? std::numeric_limits<double>::infinity()
                                      : effective_resistance(net, A, Z));
    profile.cumulative.push_back(core.empty() || Z.empty()
                                     ? std::numeric_limits<double>::infinity()
                                     : effective_resistance(net, core, Z));
  }
  return profile;
}

}  // namespace pll

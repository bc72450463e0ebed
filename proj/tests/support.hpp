#pragma once

// Shared helpers for the test suites: random instance builders and
// deliberately naive oracles (exhaustive permutation search, dense grid
// scans, angular sweeps, closed forms).  None of the oracle code calls the
// library path it is used to check, so agreement is evidence rather than
// tautology.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "pll/generators.hpp"
#include "pll/graph.hpp"
#include "pll/network.hpp"
#include "pll/packing.hpp"
#include "pll/rng.hpp"

namespace support {

// |a - b| measured against the larger magnitude, floored at 1.
inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

// Connected simple graph on n vertices: a random recursive tree plus up to
// `extra` random chords, neighbor order shuffled per vertex.
inline pll::PlanarGraph random_connected_graph(pll::Rng& rng, int n, int extra) {
  std::vector<std::vector<pll::Vertex>> rot(static_cast<std::size_t>(n));
  std::set<std::pair<int, int>> used;
  auto add = [&](int u, int v) {
    rot[u].push_back(v);
    rot[v].push_back(u);
    used.insert({std::min(u, v), std::max(u, v)});
  };
  for (int v = 1; v < n; ++v) add(int(rng.below(std::uint32_t(v))), v);
  for (int t = 0; t < extra; ++t) {
    for (int attempt = 0; attempt < 32; ++attempt) {
      const int u = int(rng.below(std::uint32_t(n)));
      const int v = int(rng.below(std::uint32_t(n)));
      if (u == v || used.count({std::min(u, v), std::max(u, v)})) continue;
      add(u, v);
      break;
    }
  }
  for (auto& nb : rot)
    for (std::size_t i = nb.size(); i > 1; --i)
      std::swap(nb[i - 1], nb[rng.below(std::uint32_t(i))]);
  return pll::PlanarGraph(n, std::move(rot));
}

// Connected network with log-uniform resistances in [lo, hi].  A BFS tree
// is kept finite; every other edge independently becomes infinite with the
// given probability, so the finite part always stays connected.
inline pll::Network random_network(pll::Rng& rng, int n, int extra, double lo = 0.1,
                                   double hi = 10.0, double infinite_fraction = 0.0) {
  pll::PlanarGraph g = random_connected_graph(rng, n, extra);
  std::vector<char> tree_edge(std::size_t(g.edge_count()), 0);
  std::vector<int> dist(std::size_t(n), -1);
  std::vector<int> queue{0};
  dist[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    const auto& nb = g.neighbors(u);
    const auto& inc = g.incident_edge_ids(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (dist[std::size_t(nb[i])] >= 0) continue;
      dist[std::size_t(nb[i])] = dist[std::size_t(u)] + 1;
      tree_edge[std::size_t(inc[i])] = 1;
      queue.push_back(nb[i]);
    }
  }
  std::vector<double> R(std::size_t(g.edge_count()));
  for (int e = 0; e < g.edge_count(); ++e) {
    if (!tree_edge[std::size_t(e)] && infinite_fraction > 0.0 &&
        rng.next_double() < infinite_fraction)
      R[std::size_t(e)] = pll::kInfiniteResistance;
    else
      R[std::size_t(e)] = std::exp(rng.uniform(std::log(lo), std::log(hi)));
  }
  return pll::Network(std::move(g), std::move(R));
}

// Connected planar subgraph: a flip-chain triangulation with roughly
// `remove_fraction` of its edges deleted (kept connected; deleted edges are
// restored at their original rotation slots when removal would disconnect).
inline pll::PlanarGraph random_planar_subgraph(pll::Rng& rng, int n, std::int64_t steps,
                                               double remove_fraction) {
  const pll::PlanarGraph tri = pll::flip_mcmc_triangulation(n, steps, rng.next_u64());
  auto rot = tri.rotations();
  auto connected = [&]() {
    std::vector<char> seen(std::size_t(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v : rot[std::size_t(u)])
        if (!seen[std::size_t(v)]) {
          seen[std::size_t(v)] = 1;
          ++reached;
          stack.push_back(v);
        }
    }
    return reached == n;
  };
  std::vector<int> order(std::size_t(tri.edge_count()));
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[rng.below(std::uint32_t(i))]);
  const int target = int(remove_fraction * double(tri.edge_count()));
  int removed = 0;
  for (int idx : order) {
    if (removed >= target) break;
    const pll::Edge e = tri.edges()[std::size_t(idx)];
    auto& ru = rot[std::size_t(e.u)];
    auto& rv = rot[std::size_t(e.v)];
    const auto pu = std::size_t(std::find(ru.begin(), ru.end(), e.v) - ru.begin());
    const auto pv = std::size_t(std::find(rv.begin(), rv.end(), e.u) - rv.begin());
    ru.erase(ru.begin() + long(pu));
    rv.erase(rv.begin() + long(pv));
    if (connected()) {
      ++removed;
    } else {
      ru.insert(ru.begin() + long(pu), e.v);
      rv.insert(rv.begin() + long(pv), e.u);
    }
  }
  return pll::PlanarGraph(n, std::move(rot));
}

// ---------------------------------------------------------------------------
// Graph oracles
// ---------------------------------------------------------------------------

// Sorted vertices within `radius` hops of root, by a hand-rolled BFS.
inline std::vector<int> bfs_ball_oracle(const pll::PlanarGraph& g, int root, int radius) {
  std::vector<int> dist(std::size_t(g.vertex_count()), -1);
  std::vector<int> queue{root};
  dist[std::size_t(root)] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    if (dist[std::size_t(u)] == radius) continue;
    for (int v : g.neighbors(u))
      if (dist[std::size_t(v)] < 0) {
        dist[std::size_t(v)] = dist[std::size_t(u)] + 1;
        queue.push_back(v);
      }
  }
  std::vector<int> inside;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (dist[std::size_t(v)] >= 0) inside.push_back(v);
  std::sort(inside.begin(), inside.end());
  return inside;
}

// Root-preserving graph isomorphism by exhaustive permutation search
// (adjacency only; intended for n <= 8).
inline bool rooted_isomorphic_oracle(const pll::PlanarGraph& a, int ra, const pll::PlanarGraph& b,
                                     int rb) {
  const int n = a.vertex_count();
  if (n != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  auto matrix = [](const pll::PlanarGraph& g) {
    std::vector<char> m(std::size_t(g.vertex_count()) * std::size_t(g.vertex_count()), 0);
    for (const pll::Edge& e : g.edges()) {
      m[std::size_t(e.u) * std::size_t(g.vertex_count()) + std::size_t(e.v)] = 1;
      m[std::size_t(e.v) * std::size_t(g.vertex_count()) + std::size_t(e.u)] = 1;
    }
    return m;
  };
  const std::vector<char> ma = matrix(a), mb = matrix(b);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (perm[std::size_t(ra)] != rb) continue;
    bool ok = true;
    for (int u = 0; u < n && ok; ++u)
      for (int v = u + 1; v < n && ok; ++v)
        ok = ma[std::size_t(u) * std::size_t(n) + std::size_t(v)] ==
             mb[std::size_t(perm[std::size_t(u)]) * std::size_t(n) +
                std::size_t(perm[std::size_t(v)])];
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// ---------------------------------------------------------------------------
// Geometry oracles
// ---------------------------------------------------------------------------

// Radius of the circle internally tangent to three mutually tangent circles
// (Descartes circle theorem, inner solution).
inline double descartes_interior_radius(double r1, double r2, double r3) {
  const double k1 = 1.0 / r1, k2 = 1.0 / r2, k3 = 1.0 / r3;
  return 1.0 / (k1 + k2 + k3 + 2.0 * std::sqrt(k1 * k2 + k2 * k3 + k3 * k1));
}

// Exact maximum number of points covered by one closed disk of the given
// radius, by the classical angular sweep: some optimal disk has a point on
// its boundary, so centers are swept along the radius-r circle around each
// point.  The coverage predicate carries the same 1e-9 relative slack on
// the squared radius as the library definition.  O(n^2 log n).
inline int max_coverage_sweep_oracle(const std::vector<pll::Point>& pts, double radius) {
  if (pts.empty()) return 0;
  const double r2 = radius * radius * (1.0 + 1e-9);
  int best = 1;
  std::vector<std::pair<double, int>> events;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    events.clear();
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j == i) continue;
      const double dx = pts[j].x - pts[i].x, dy = pts[j].y - pts[i].y;
      const double d = std::hypot(dx, dy);
      // Centers c = pts[i] + radius*(cos t, sin t) covering j satisfy
      // cos(t - psi) >= (d^2 + radius^2 - r2) / (2 radius d) with psi the
      // bearing of j from i; no solution when that exceeds 1.
      const double q = (d * d + radius * radius - r2) / (2.0 * radius * d);
      if (q > 1.0) continue;
      const double beta = std::acos(std::max(-1.0, q));
      const double psi = std::atan2(dy, dx);
      double lo = psi - beta, hi = psi + beta;
      const double two_pi = 2.0 * std::acos(-1.0);
      auto wrap = [&](double t) {
        while (t < 0) t += two_pi;
        while (t >= two_pi) t -= two_pi;
        return t;
      };
      lo = wrap(lo);
      hi = wrap(hi);
      if (lo <= hi) {
        events.emplace_back(lo, +1);
        events.emplace_back(hi, -1);
      } else {  // interval wraps around 0
        events.emplace_back(0.0, +1);
        events.emplace_back(hi, -1);
        events.emplace_back(lo, +1);
        events.emplace_back(two_pi, -1);
      }
    }
    std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      return a.second > b.second;  // open at +1 before close, intervals are closed
    });
    int depth = 0;
    for (const auto& ev : events) {
      depth += ev.second;
      best = std::max(best, depth + 1);  // +1 for point i itself
    }
  }
  return best;
}

// Grid-search supported-points oracle: isolation radii recomputed from
// scratch, the inner optimum taken over the square grid of pitch
// delta*rho_w/8 anchored at w (restricted to candidates within reach of a
// cloud point; farther centers cover nothing), plus a thin-lens refinement
// pass for point pairs nearly one diameter apart, whose co-coverage sliver
// is thinner than the grid pitch.  Same coverage slack as the definition.
struct SupportedOracleResult {
  int count = 0;
  std::vector<int> witnesses;
  std::vector<int> slack;
};

inline SupportedOracleResult supported_grid_oracle(const std::vector<pll::Point>& pts,
                                                   double delta, int s) {
  const int n = int(pts.size());
  SupportedOracleResult result;
  result.slack.assign(std::size_t(n), 0);
  for (int w = 0; w < n; ++w) {
    double rho = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j)
      if (j != w) rho = std::min(rho, pll::distance(pts[std::size_t(j)], pts[std::size_t(w)]));
    const double outer = rho / delta;
    const double r = delta * rho;
    const double r2 = r * r * (1.0 + 1e-9);
    std::vector<int> S;
    for (int j = 0; j < n; ++j)
      if (pll::distance(pts[std::size_t(j)], pts[std::size_t(w)]) <= outer) S.push_back(j);
    const double pitch = r / 8.0;
    // Candidate centers: grid nodes w + pitch*(i, j) within r + pitch of
    // some member of S (collected per point, then deduplicated).
    std::vector<std::pair<long, long>> cells;
    for (int j : S) {
      const double cx = pts[std::size_t(j)].x - pts[std::size_t(w)].x;
      const double cy = pts[std::size_t(j)].y - pts[std::size_t(w)].y;
      const long ilo = long(std::floor((cx - r - pitch) / pitch));
      const long ihi = long(std::ceil((cx + r + pitch) / pitch));
      const long jlo = long(std::floor((cy - r - pitch) / pitch));
      const long jhi = long(std::ceil((cy + r + pitch) / pitch));
      for (long gi = ilo; gi <= ihi; ++gi)
        for (long gj = jlo; gj <= jhi; ++gj) cells.emplace_back(gi, gj);
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    int maxcov = 0;
    auto probe = [&](double px, double py) {
      int cov = 0;
      for (int j : S) {
        const double dx = pts[std::size_t(j)].x - px, dy = pts[std::size_t(j)].y - py;
        if (dx * dx + dy * dy <= r2) ++cov;
      }
      maxcov = std::max(maxcov, cov);
    };
    for (const auto& cell : cells)
      probe(pts[std::size_t(w)].x + double(cell.first) * pitch,
            pts[std::size_t(w)].y + double(cell.second) * pitch);
    // Thin-lens refinement.  A pair almost exactly one diameter apart is
    // co-covered only on a sliver of centers of thickness 2r - d, which the
    // coarse scan walks straight past.  Pairs with d <= 2r - sqrt(2)*pitch
    // are caught provably (some grid point lies within pitch/sqrt(2) of the
    // pair midpoint, whose radius margin is r - d/2), so only the thin band
    // above that gets extra probes: the midpoint itself, which always
    // co-covers the pair, plus a fine grid over the lens box for optima that
    // also pick up further points inside the sliver.
    const double rslack = r * std::sqrt(1.0 + 1e-9);
    for (std::size_t ii = 0; ii < S.size(); ++ii)
      for (std::size_t jj = ii + 1; jj < S.size(); ++jj) {
        const pll::Point& a = pts[std::size_t(S[ii])];
        const pll::Point& b = pts[std::size_t(S[jj])];
        const double d = pll::distance(a, b);
        if (d > 2.0 * rslack || d <= 2.0 * r - std::sqrt(2.0) * pitch || d == 0.0) continue;
        const double mx = 0.5 * (a.x + b.x), my = 0.5 * (a.y + b.y);
        probe(mx, my);
        const double ux = (b.x - a.x) / d, uy = (b.y - a.y) / d;
        const double tau = std::max(2.0 * r - d, 1e-4 * r);
        const double fine = tau / 4.0;
        const double half_len = std::sqrt(std::max(r2 - 0.25 * d * d, 0.0)) + fine;
        for (double s_axis = -tau; s_axis <= tau; s_axis += fine)
          for (double s_perp = -half_len; s_perp <= half_len; s_perp += fine)
            probe(mx + s_axis * ux - s_perp * uy, my + s_axis * uy + s_perp * ux);
      }
    result.slack[std::size_t(w)] = int(S.size()) - maxcov;
    if (int(S.size()) - maxcov >= s) {
      ++result.count;
      result.witnesses.push_back(w);
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

// Resistance across a unit cycle of length n between vertices k apart.
inline double cycle_reff(int n, int k) { return double(k) * double(n - k) / double(n); }

}  // namespace support

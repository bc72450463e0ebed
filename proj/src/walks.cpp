#include "pll/walks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>

#include "pll/electric.hpp"
#include "pll/stats.hpp"

namespace pll {

namespace {

// Flattened transition structure: per-vertex neighbor slices with
// cumulative transition probabilities, so one uniform draw picks the step.
struct StepSampler {
  std::vector<int> offset;        // n + 1
  std::vector<Vertex> neighbor;   // positive-conductance neighbors
  std::vector<double> cumulative; // within-slice cumulative probabilities

  explicit StepSampler(const Network& net) {
    const int n = net.vertex_count();
    offset.assign(n + 1, 0);
    for (int e = 0; e < net.edge_count(); ++e) {
      if (net.conductance(e) <= 0.0) continue;
      const Edge ed = net.graph().edges()[e];
      ++offset[ed.u + 1];
      ++offset[ed.v + 1];
    }
    for (int v = 0; v < n; ++v) offset[v + 1] += offset[v];
    neighbor.resize(offset[n]);
    cumulative.resize(offset[n]);
    std::vector<int> fill(offset.begin(), offset.end() - 1);
    for (int e = 0; e < net.edge_count(); ++e) {
      const double c = net.conductance(e);
      if (c <= 0.0) continue;
      const Edge ed = net.graph().edges()[e];
      neighbor[fill[ed.u]] = ed.v;
      cumulative[fill[ed.u]++] = c;
      neighbor[fill[ed.v]] = ed.u;
      cumulative[fill[ed.v]++] = c;
    }
    for (int v = 0; v < n; ++v) {
      double acc = 0.0;
      for (int i = offset[v]; i < offset[v + 1]; ++i) {
        acc += cumulative[i];
        cumulative[i] = acc;
      }
      for (int i = offset[v]; i < offset[v + 1]; ++i) cumulative[i] /= acc;
      if (offset[v + 1] > offset[v]) cumulative[offset[v + 1] - 1] = 1.0;
    }
  }

  int degree(Vertex v) const { return offset[v + 1] - offset[v]; }

  Vertex step(Vertex v, Rng& rng) const {
    const double u = rng.next_double();
    int i = offset[v];
    const int end = offset[v + 1];
    while (i + 1 < end && cumulative[i] < u) ++i;
    return neighbor[i];
  }
};

void require_simple_no_loops(const PlanarGraph& g, const char* what) {
  for (const Edge& ed : g.edges())
    if (ed.u == ed.v) throw std::invalid_argument(std::string(what) + ": self-loop present");
  if (!g.simple()) throw std::invalid_argument(std::string(what) + ": parallel edges present");
}

// First time t >= 1 with X_t == start for a uniform-neighbor walk, capped:
// returns cap + 1 when no return happens during steps 1..cap.
int first_return_time(const PlanarGraph& g, Vertex start, int cap, Rng& rng) {
  Vertex at = start;
  for (int t = 1; t <= cap; ++t) {
    const auto& nbr = g.neighbors(at);
    at = nbr[rng.below(std::uint32_t(nbr.size()))];
    if (at == start) return t;
  }
  return cap + 1;
}

}  // namespace

std::vector<Vertex> simulate_walk(const Network& net, Vertex start, int T, Rng& rng) {
  if (start < 0 || start >= net.vertex_count())
    throw std::invalid_argument("simulate_walk: start out of range");
  if (T <= 0) throw std::invalid_argument("simulate_walk: trajectory length must be positive");
  if (net.conductance_sum(start) <= 0.0)
    throw std::invalid_argument("simulate_walk: start vertex is isolated");
  const StepSampler sampler(net);
  std::vector<Vertex> traj;
  traj.reserve(T);
  traj.push_back(start);
  Vertex at = start;
  for (int t = 1; t < T; ++t) {
    at = sampler.step(at, rng);
    traj.push_back(at);
  }
  return traj;
}

std::vector<Vertex> simulate_walk(const Network& net, Vertex start, int T, std::uint64_t seed) {
  Rng rng(seed);
  return simulate_walk(net, start, T, rng);
}

std::vector<AvoidanceEstimate> avoidance_probability_multi(const PlanarGraph& g,
                                                           const std::vector<int>& horizons,
                                                           std::int64_t trials,
                                                           std::uint64_t seed) {
  require_simple_no_loops(g, "avoidance_probability");
  if (horizons.empty()) throw std::invalid_argument("avoidance_probability: no horizons");
  for (const int T : horizons)
    if (T <= 0) throw std::invalid_argument("avoidance_probability: horizons must be positive");
  if (trials <= 0) throw std::invalid_argument("avoidance_probability: trials must be positive");
  const int n = g.vertex_count();
  if (n == 0) throw std::invalid_argument("avoidance_probability: empty graph");
  for (Vertex v = 0; v < n; ++v)
    if (g.degree(v) == 0)
      throw std::invalid_argument("avoidance_probability: isolated vertex present");

  const int cap = *std::max_element(horizons.begin(), horizons.end());
  // Sorted distinct horizons; a trial's return time is binned once.
  std::vector<int> sorted(horizons);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<std::int64_t> survived(sorted.size(), 0);
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    Rng rng(seed, std::uint64_t(trial));
    const Vertex start = Vertex(rng.below(std::uint32_t(n)));
    const int ret = first_return_time(g, start, cap, rng);
    // Survives horizon T exactly when ret > T; horizons are ascending.
    for (std::size_t i = 0; i < sorted.size() && ret > sorted[i]; ++i) ++survived[i];
  }
  std::vector<AvoidanceEstimate> out;
  out.reserve(horizons.size());
  for (const int T : horizons) {
    const std::size_t idx =
        std::size_t(std::lower_bound(sorted.begin(), sorted.end(), T) - sorted.begin());
    AvoidanceEstimate est;
    est.horizon = T;
    est.trials = trials;
    est.successes = survived[idx];
    est.phi = double(est.successes) / double(trials);
    const WilsonInterval w = wilson_interval(std::uint64_t(est.successes), std::uint64_t(trials));
    est.ci_low = w.lo();
    est.ci_high = w.hi();
    out.push_back(est);
  }
  return out;
}

AvoidanceEstimate avoidance_probability(const PlanarGraph& g, int T, std::int64_t trials,
                                        std::uint64_t seed) {
  return avoidance_probability_multi(g, {T}, trials, seed)[0];
}

std::vector<double> avoidance_exact_curve(const PlanarGraph& g, int T) {
  require_simple_no_loops(g, "avoidance_exact_small");
  const int n = g.vertex_count();
  if (n == 0 || n > 1000)
    throw std::invalid_argument("avoidance_exact_small: vertex count must be in [1, 1000]");
  if (T < 1 || T > 10000)
    throw std::invalid_argument("avoidance_exact_small: horizon must be in [1, 10000]");
  for (Vertex v = 0; v < n; ++v)
    if (g.degree(v) == 0)
      throw std::invalid_argument("avoidance_exact_small: isolated vertex present");

  // Sum over starts of the surviving mass; average at the end.
  std::vector<double> total(T, 0.0);
  std::vector<double> cur(n), nxt(n);
  for (Vertex a = 0; a < n; ++a) {
    std::fill(cur.begin(), cur.end(), 0.0);
    const double pa = 1.0 / double(g.degree(a));
    for (const Vertex y : g.neighbors(a)) cur[y] += pa;  // after step 1 (y != a)
    double alive = 1.0;  // no self-loops: step 1 never returns
    total[0] += alive;
    for (int t = 2; t <= T; ++t) {
      std::fill(nxt.begin(), nxt.end(), 0.0);
      double killed = 0.0;
      for (Vertex y = 0; y < n; ++y) {
        const double m = cur[y];
        if (m == 0.0 || y == a) continue;
        const double py = m / double(g.degree(y));
        for (const Vertex w : g.neighbors(y)) {
          if (w == a)
            killed += py;
          else
            nxt[w] += py;
        }
      }
      alive -= killed;
      total[t - 1] += alive;
      cur.swap(nxt);
    }
  }
  for (double& v : total) v /= double(n);
  return total;
}

double avoidance_exact_small(const PlanarGraph& g, int T) {
  return avoidance_exact_curve(g, T).back();
}

HittingResult exact_hitting(const Network& net, Vertex a, const std::vector<Vertex>& targets) {
  const int n = net.vertex_count();
  if (a < 0 || a >= n) throw std::invalid_argument("exact_hitting: start out of range");
  if (targets.empty()) throw std::invalid_argument("exact_hitting: empty target set");
  for (const Vertex t : targets)
    if (t < 0 || t >= n) throw std::invalid_argument("exact_hitting: target out of range");
  if (net.conductance_sum(a) <= 0.0)
    throw std::invalid_argument("exact_hitting: start vertex is isolated");

  // Reachability from a (positive conductance); every target must be hit
  // with positive probability.
  {
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{a};
    seen[a] = 1;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (const int e : net.graph().incident_edge_ids(v)) {
        if (net.conductance(e) <= 0.0) continue;
        const Edge ed = net.graph().edges()[e];
        const Vertex w = ed.u == v ? ed.v : ed.u;
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    for (const Vertex t : targets)
      if (!seen[t])
        throw std::invalid_argument("exact_hitting: target unreachable from the start");
  }

  std::vector<Vertex> distinct(targets);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  // One boundary-value solve per distinct target gives the absorption split;
  // the clock starting at 1 is handled by conditioning on the first step.
  std::unordered_map<Vertex, std::vector<double>> split;
  for (const Vertex t : distinct) {
    std::vector<std::pair<Vertex, double>> boundary;
    boundary.reserve(distinct.size());
    for (const Vertex s : distinct) boundary.emplace_back(s, s == t ? 1.0 : 0.0);
    split.emplace(t, solve_boundary_value(net, boundary));
  }
  const std::vector<double> mean_time = expected_absorption_time(net, distinct);

  HittingResult result;
  result.probability.assign(targets.size(), 0.0);
  result.expected_time = 1.0;
  const double ca = net.conductance_sum(a);
  for (const int e : net.graph().incident_edge_ids(a)) {
    const double c = net.conductance(e);
    if (c <= 0.0) continue;
    const Edge ed = net.graph().edges()[e];
    const Vertex y = ed.u == a ? ed.v : ed.u;
    const double p = c / ca;
    for (std::size_t i = 0; i < targets.size(); ++i)
      result.probability[i] += p * split.at(targets[i])[y];
    result.expected_time += p * mean_time[y];
  }
  return result;
}

PerturbationBound perturbation_bound_check(const Network& net, const Network& altered,
                                           const std::vector<Vertex>& S, Vertex a, Vertex z) {
  const int n = net.vertex_count();
  if (altered.vertex_count() != n)
    throw std::invalid_argument("perturbation_bound_check: vertex counts differ");
  if (a < 0 || a >= n || z < 0 || z >= n || a == z)
    throw std::invalid_argument("perturbation_bound_check: need two distinct valid vertices");
  std::vector<char> in_S(n, 0);
  for (const Vertex v : S) {
    if (v < 0 || v >= n) throw std::invalid_argument("perturbation_bound_check: S out of range");
    in_S[v] = 1;
  }
  if (in_S[a] || in_S[z])
    throw std::invalid_argument("perturbation_bound_check: a and z must lie outside S");

  // The two networks must agree (exactly) on every edge not inside S x S.
  const auto outside_edges = [&](const Network& w) {
    std::vector<std::tuple<Vertex, Vertex, double>> out;
    for (int e = 0; e < w.edge_count(); ++e) {
      const Edge ed = w.graph().edges()[e];
      if (in_S[ed.u] && in_S[ed.v]) continue;
      out.emplace_back(std::min(ed.u, ed.v), std::max(ed.u, ed.v), w.resistance(e));
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  if (outside_edges(net) != outside_edges(altered))
    throw std::invalid_argument(
        "perturbation_bound_check: networks differ on an edge outside S x S");

  PerturbationBound result;
  const double esc = escape_probability(net, a, z);
  const double esc2 = escape_probability(altered, a, z);
  result.lhs = std::abs(esc - esc2);

  if (std::none_of(in_S.begin(), in_S.end(), [](char c) { return c != 0; })) {
    result.rhs = 0.0;
  } else {
    // h(y) = P_y(tau_S < tau_{a,z}); the walk compared here never uses an
    // S-internal edge before the coupling breaks, so `net` determines h.
    std::vector<std::pair<Vertex, double>> boundary;
    for (Vertex v = 0; v < n; ++v)
      if (in_S[v]) boundary.emplace_back(v, 1.0);
    boundary.emplace_back(a, 0.0);
    boundary.emplace_back(z, 0.0);
    const auto h = solve_boundary_value(net, boundary);
    const double ca = net.conductance_sum(a);
    if (ca <= 0.0)
      throw std::invalid_argument("perturbation_bound_check: start vertex is isolated");
    double rhs = 0.0;
    for (const int e : net.graph().incident_edge_ids(a)) {
      const double c = net.conductance(e);
      if (c <= 0.0) continue;
      const Edge ed = net.graph().edges()[e];
      rhs += (c / ca) * h[ed.u == a ? ed.v : ed.u];
    }
    result.rhs = rhs;
  }
  result.pass = result.lhs <= result.rhs + 1e-9;
  return result;
}

}  // namespace pll

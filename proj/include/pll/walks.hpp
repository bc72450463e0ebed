#pragma once

// Discrete-time random walks on networks and graphs: trajectory sampling
// with conductance-proportional transitions, Monte Carlo estimates of the
// start-avoidance probability phi(T, G) with one counter-based stream per
// trial, exact absorbing-chain references for small instances, exact
// hitting functionals, and the coupling bound comparing escape
// probabilities of two networks that differ only inside a vertex set.

#include <cstdint>
#include <vector>

#include "pll/graph.hpp"
#include "pll/network.hpp"
#include "pll/rng.hpp"

namespace pll {

// Trajectory X_0 .. X_{T-1}: starts at `start`, followed by T - 1 steps,
// each to a neighbor chosen with probability proportional to the edge
// conductance.  Deterministic given the seed.  The start vertex must have a
// positive-conductance edge.
std::vector<Vertex> simulate_walk(const Network& net, Vertex start, int T, std::uint64_t seed);
std::vector<Vertex> simulate_walk(const Network& net, Vertex start, int T, Rng& rng);

struct AvoidanceEstimate {
  int horizon = 0;             // T
  double phi = 0.0;            // successes / trials
  double ci_low = 0.0;         // Wilson 95% score interval
  double ci_high = 0.0;
  std::int64_t trials = 0;
  std::int64_t successes = 0;
};

// Monte Carlo estimate of phi(T, G): the probability that a simple random
// walk from a uniformly random start vertex satisfies X_t != X_0 for all
// t = 1..T.  Trial i draws from the independent stream Rng(seed, i), so the
// estimate does not depend on evaluation order.  The graph must be simple
// with no self-loops and no isolated vertices.
AvoidanceEstimate avoidance_probability(const PlanarGraph& g, int T, std::int64_t trials,
                                        std::uint64_t seed);

// Shared-trial estimates for several horizons at once: each trial walks
// until first return (capped at max horizon) and its return time serves
// every requested T.  Results align with `horizons`.
std::vector<AvoidanceEstimate> avoidance_probability_multi(const PlanarGraph& g,
                                                           const std::vector<int>& horizons,
                                                           std::int64_t trials,
                                                           std::uint64_t seed);

// Exact phi(T, G) by absorbing-chain iteration: the start is made
// absorbing, the surviving probability mass after T steps is read off, and
// the result is averaged over the uniform start.  Caps: |V| <= 1000,
// T <= 10000.
double avoidance_exact_small(const PlanarGraph& g, int T);

// Exact phi(1..T) in one pass (same cost as the single value at T);
// element t-1 holds phi(t, G).
std::vector<double> avoidance_exact_curve(const PlanarGraph& g, int T);

struct HittingResult {
  std::vector<double> probability;  // absorption split, aligned with `targets`
  double expected_time = 0.0;       // E_a[tau], tau = min{n >= 1 : X_n in targets}
};

// Exact absorption probabilities and expected absorption time for the walk
// started at a, with the clock starting at step 1 (so a itself may be a
// target, giving return functionals).  Every target must be reachable from
// a through positive-conductance edges.
HittingResult exact_hitting(const Network& net, Vertex a, const std::vector<Vertex>& targets);

struct PerturbationBound {
  double lhs = 0.0;   // |P_a(tau_z < tau_a) - P'_a(tau_z < tau_a)|
  double rhs = 0.0;   // P_a(tau_S < tau_{a,z})
  bool pass = false;  // lhs <= rhs up to 1e-9 solver slack
};

// Coupling bound: two networks that agree on every edge not inside S x S
// drive identically-coupled walks until the walk enters S, so their escape
// probabilities a -> z differ by at most the probability of touching S
// before the walk resolves.  Validates the agreement precondition and that
// a, z lie outside S.  Both sides are computed by exact linear solves.
PerturbationBound perturbation_bound_check(const Network& net, const Network& altered,
                                           const std::vector<Vertex>& S, Vertex a, Vertex z);

}  // namespace pll

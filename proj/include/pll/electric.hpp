#pragma once

// Effective resistance and current flows on finite networks.  Vertex sets
// are handled by contraction; the reduced Laplacian system is solved by a
// sparse symmetric factorization (conjugate-gradient fallback) to 1e-12
// relative residual.  Hitting quantities are solved independently through
// the (non-symmetric) transition-matrix form so that the classical
// walk/resistance identities remain genuine cross-checks.

#include <utility>
#include <vector>

#include "pll/network.hpp"

namespace pll {

// Resistance between disjoint vertex sets A and Z (each contracted to a
// point).  Returns +infinity when either set is empty or no positive-
// conductance path joins them.  Overlapping sets are an error.
double effective_resistance(const Network& net, const std::vector<Vertex>& A,
                            const std::vector<Vertex>& Z);

inline double effective_resistance(const Network& net, Vertex a, Vertex z) {
  return effective_resistance(net, std::vector<Vertex>{a}, std::vector<Vertex>{z});
}

// Dirichlet minimizer with g|A = 0, g|Z = 1 (constant on each contracted
// side, harmonic elsewhere; vertices in components meeting neither set get
// value 0).
Potential harmonic_potential(const Network& net, const std::vector<Vertex>& A,
                             const std::vector<Vertex>& Z);

// Energy sum c_e (g_u - g_v)^2 of an arbitrary vertex assignment.
double dirichlet_energy(const Network& net, const std::vector<double>& g);

// Unit current flow from A to Z.  Throws when the effective resistance is
// infinite (no unit flow exists).
Flow unit_current_flow(const Network& net, const std::vector<Vertex>& A,
                       const std::vector<Vertex>& Z);

// P_a(X_tau = z) with tau = min{n >= 1 : X_n in {a, z}}, computed through
// the transition-matrix linear system (not through the Laplacian path).
double escape_probability(const Network& net, Vertex a, Vertex z);

// (E_a tau_z, E_z tau_a), each by an expected-hitting-time solve.
std::pair<double, double> commute_time(const Network& net, Vertex a, Vertex z);

// Harmonic extension: value fixed on `boundary` (vertex, value) pairs,
// harmonic at every other vertex of a component meeting the boundary, 0 on
// components that never meet it.
std::vector<double> solve_boundary_value(const Network& net,
                                         const std::vector<std::pair<Vertex, double>>& boundary);

// E_x[min{n >= 0 : X_n in targets}] for every vertex x of the network,
// through the transition-matrix system; +infinity on vertices from which no
// target is reachable, 0 on the targets themselves.
std::vector<double> expected_absorption_time(const Network& net,
                                             const std::vector<Vertex>& targets);

// Flow splice through a vertex set A containing a: routes the unit flow
// A -> z backwards through unit flows a -> v inside A, weighted by the exit
// flows alpha_v.  Requires every v in A to be reachable from a through
// edges interior to A (finite internal resistance).
struct SpliceResult {
  Flow flow;                  // unit flow a -> z
  double bound = 0.0;         // reff_A_z + max_internal
  double reff_A_z = 0.0;      // Reff(A <-> z)
  double max_internal = 0.0;  // max_v Reff(a <-> v) in the A-restricted network
  std::vector<double> alpha;  // exit flow per vertex of A (aligned with A)
};
SpliceResult splice_flow(const Network& net, const std::vector<Vertex>& A, Vertex a, Vertex z);

// Independent two-point resistance oracle via weighted spanning-forest
// determinant ratios (all-minors matrix-tree); dense, own elimination, no
// shared code with the solver path.  Guarded to n <= 25.
double reff_matrix_tree_oracle(const Network& net, Vertex a, Vertex z);

}  // namespace pll

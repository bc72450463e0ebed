#include "pll/electric.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <Eigen/IterativeLinearSolvers>

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>

namespace pll {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

// Solve the SPD system L x = b to 1e-12 relative residual: direct
// factorization first, conjugate gradients as fallback.
Eigen::VectorXd solve_spd(const SpMat& L, const Eigen::VectorXd& b) {
  Eigen::VectorXd x;
  bool ok = false;
  {
    Eigen::SimplicialLDLT<SpMat> ldlt(L);
    if (ldlt.info() == Eigen::Success) {
      x = ldlt.solve(b);
      ok = ldlt.info() == Eigen::Success;
    }
  }
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  if (ok && (L * x - b).cwiseAbs().maxCoeff() <= 1e-12 * scale) return x;
  Eigen::ConjugateGradient<SpMat, Eigen::Lower | Eigen::Upper> cg(L);
  cg.setTolerance(1e-14);
  cg.setMaxIterations(20 * L.rows() + 100);
  x = ok ? cg.solveWithGuess(b, x).eval() : cg.solve(b).eval();
  if ((L * x - b).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw std::runtime_error("solve_spd: linear solve failed to converge");
  return x;
}

void check_vertices(const Network& net, const std::vector<Vertex>& vs, const char* what) {
  for (const Vertex v : vs)
    if (v < 0 || v >= net.vertex_count())
      throw std::invalid_argument(std::string(what) + ": vertex out of range");
}

std::vector<Vertex> dedup(std::vector<Vertex> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

// Contracted potential solve shared by resistance / potential / flow paths.
// Returns per-original-vertex potentials (A = 0, Z = 1) and the current.
struct ContractedSolve {
  bool finite = false;        // a positive-conductance A-Z connection exists
  double current = 0.0;       // total current through the harmonic potential
  std::vector<double> g;      // potential per original vertex
};

ContractedSolve contract_and_solve(const Network& net, const std::vector<Vertex>& A,
                                   const std::vector<Vertex>& Z) {
  check_vertices(net, A, "effective_resistance: A");
  check_vertices(net, Z, "effective_resistance: Z");
  const auto sa = dedup(A), sz = dedup(Z);
  {
    std::vector<Vertex> inter;
    std::set_intersection(sa.begin(), sa.end(), sz.begin(), sz.end(), std::back_inserter(inter));
    if (!inter.empty())
      throw std::invalid_argument("effective_resistance: A and Z must be disjoint");
  }
  ContractedSolve out;
  out.g.assign(net.vertex_count(), 0.0);
  for (const Vertex v : sz) out.g[v] = 1.0;
  if (sa.empty() || sz.empty()) return out;  // infinite by convention

  const int n = net.vertex_count();
  // Contracted ids: A -> 0, Z -> 1, everything else 2...
  std::vector<int> cid(n, -1);
  for (const Vertex v : sa) cid[v] = 0;
  for (const Vertex v : sz) cid[v] = 1;
  int m = 2;
  for (int v = 0; v < n; ++v)
    if (cid[v] < 0) cid[v] = m++;

  std::vector<std::vector<std::pair<int, double>>> adj(m);
  for (int e = 0; e < net.edge_count(); ++e) {
    const double c = net.conductance(e);
    if (c <= 0.0) continue;
    const Edge ed = net.graph().edges()[e];
    const int a = cid[ed.u], b = cid[ed.v];
    if (a == b) continue;
    adj[a].push_back({b, c});
    adj[b].push_back({a, c});
  }

  // Work inside the contracted component of A only.
  std::vector<int> comp(m, -1);
  std::queue<int> q;
  comp[0] = 0;
  q.push(0);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (const auto& [w, c] : adj[v])
      if (comp[w] < 0) {
        comp[w] = 0;
        q.push(w);
      }
  }
  if (comp[1] < 0) return out;  // disconnected: resistance +infinity

  std::vector<int> sys(m, -1);
  int dim = 0;
  for (int v = 2; v < m; ++v)
    if (comp[v] == 0) sys[v] = dim++;

  std::vector<double> x(dim, 0.0);
  if (dim > 0) {
    std::vector<Triplet> trip;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
    std::vector<double> diag(dim, 0.0);
    for (int v = 2; v < m; ++v) {
      if (sys[v] < 0) continue;
      for (const auto& [w, c] : adj[v]) {
        diag[sys[v]] += c;
        if (w == 1)
          rhs[sys[v]] += c;
        else if (w >= 2)
          trip.push_back(Triplet(sys[v], sys[w], -c));
      }
    }
    for (int i = 0; i < dim; ++i) trip.push_back(Triplet(i, i, diag[i]));
    SpMat L(dim, dim);
    L.setFromTriplets(trip.begin(), trip.end());
    const Eigen::VectorXd sol = solve_spd(L, rhs);
    for (int i = 0; i < dim; ++i) x[i] = sol[i];
  }

  // Potentials on original vertices; off-component vertices keep 0.
  for (int v = 0; v < n; ++v) {
    const int c = cid[v];
    if (c == 0)
      out.g[v] = 0.0;
    else if (c == 1)
      out.g[v] = 1.0;
    else if (sys[c] >= 0)
      out.g[v] = x[sys[c]];
    else
      out.g[v] = 0.0;
  }
  double current = 0.0;  // flow arriving at the contracted A side
  for (const auto& [w, c] : adj[0]) current += c * (w == 1 ? 1.0 : (sys[w] >= 0 ? x[sys[w]] : 0.0));
  out.finite = current > 0.0;
  out.current = current;
  return out;
}

}  // namespace

double flow_divergence(const Network& net, const Flow& f, Vertex v) {
  double div = 0.0;
  const auto& ids = net.graph().incident_edge_ids(v);
  const auto& nbrs = net.graph().neighbors(v);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const Edge ed = net.graph().edges()[ids[i]];
    (void)nbrs;
    div += (ed.u == v) ? f.value[ids[i]] : -f.value[ids[i]];
  }
  return div;
}

double max_interior_divergence(const Network& net, const Flow& f) {
  std::set<Vertex> skip(f.source.begin(), f.source.end());
  skip.insert(f.sink.begin(), f.sink.end());
  double worst = 0.0;
  for (Vertex v = 0; v < net.vertex_count(); ++v)
    if (!skip.count(v)) worst = std::max(worst, std::abs(flow_divergence(net, f, v)));
  return worst;
}

double flow_energy(const Network& net, const Flow& f) {
  if (int(f.value.size()) != net.edge_count())
    throw std::invalid_argument("flow_energy: flow does not match the network");
  double e = 0.0;
  for (int i = 0; i < net.edge_count(); ++i) {
    const double r = net.resistance(i);
    if (std::isinf(r)) {
      if (std::abs(f.value[i]) > 1e-12) return kInfiniteResistance;
      continue;
    }
    e += r * f.value[i] * f.value[i];
  }
  return e;
}

double effective_resistance(const Network& net, const std::vector<Vertex>& A,
                            const std::vector<Vertex>& Z) {
  const auto s = contract_and_solve(net, A, Z);
  return s.finite ? 1.0 / s.current : kInfiniteResistance;
}

Potential harmonic_potential(const Network& net, const std::vector<Vertex>& A,
                             const std::vector<Vertex>& Z) {
  const auto s = contract_and_solve(net, A, Z);
  Potential p;
  p.value = s.g;
  p.A = A;
  p.Z = Z;
  return p;
}

double dirichlet_energy(const Network& net, const std::vector<double>& g) {
  if (int(g.size()) != net.vertex_count())
    throw std::invalid_argument("dirichlet_energy: one value per vertex required");
  double e = 0.0;
  for (int i = 0; i < net.edge_count(); ++i) {
    const Edge ed = net.graph().edges()[i];
    const double d = g[ed.u] - g[ed.v];
    e += net.conductance(i) * d * d;
  }
  return e;
}

Flow unit_current_flow(const Network& net, const std::vector<Vertex>& A,
                       const std::vector<Vertex>& Z) {
  const auto s = contract_and_solve(net, A, Z);
  if (!s.finite)
    throw std::invalid_argument("unit_current_flow: infinite resistance, no unit flow exists");
  Flow f;
  f.value.resize(net.edge_count());
  // h = 1 - g has h|A = 1, h|Z = 0; current runs from A toward Z.  Divide by
  // the total current to make the flow unit-strength.
  for (int e = 0; e < net.edge_count(); ++e) {
    const Edge ed = net.graph().edges()[e];
    f.value[e] = net.conductance(e) * (s.g[ed.v] - s.g[ed.u]) / s.current;
  }
  f.source = dedup(A);
  f.sink = dedup(Z);
  f.strength = 1.0;
  return f;
}

namespace {

// Row (I - P) restricted to V \ absorbing, as a sparse non-symmetric system.
// Column j of the solution family is handled by the caller through rhs.
struct TransitionSystem {
  std::vector<int> sys;  // vertex -> row index or -1
  Eigen::SparseLU<SpMat>* lu = nullptr;
};

std::vector<double> solve_absorbing(const Network& net, const std::vector<Vertex>& absorbing,
                                    const std::vector<double>& boundary_value,
                                    bool expected_time) {
  const int n = net.vertex_count();
  std::vector<char> absorb(n, 0);
  for (const Vertex v : absorbing) absorb[v] = 1;
  // Restrict the linear system to vertices that can reach the absorbing set
  // (positive-conductance edges); elsewhere the walk is never absorbed, so
  // the probability mass is 0 and the expected time is infinite, and keeping
  // those vertices would make (I - P) singular.
  std::vector<char> reach(n, 0);
  {
    std::queue<Vertex> q;
    for (const Vertex v : absorbing)
      if (!reach[v]) {
        reach[v] = 1;
        q.push(v);
      }
    while (!q.empty()) {
      const Vertex v = q.front();
      q.pop();
      for (const int e : net.graph().incident_edge_ids(v)) {
        if (net.conductance(e) <= 0.0) continue;
        const Edge ed = net.graph().edges()[e];
        const Vertex w = ed.u == v ? ed.v : ed.u;
        if (!reach[w]) {
          reach[w] = 1;
          q.push(w);
        }
      }
    }
  }
  std::vector<int> sys(n, -1);
  int dim = 0;
  for (int v = 0; v < n; ++v)
    if (!absorb[v] && reach[v]) sys[v] = dim++;
  std::vector<double> out(n, expected_time ? std::numeric_limits<double>::infinity() : 0.0);
  for (const Vertex v : absorbing) out[v] = expected_time ? 0.0 : boundary_value[v];
  if (dim == 0) return out;

  std::vector<Triplet> trip;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
  for (int v = 0; v < n; ++v) {
    if (sys[v] < 0) continue;
    const double cv = net.conductance_sum(v);
    if (cv <= 0.0)
      throw std::invalid_argument("walk solve: isolated vertex outside the absorbing set");
    trip.push_back(Triplet(sys[v], sys[v], 1.0));
    if (expected_time) rhs[sys[v]] = 1.0;
    const auto& ids = net.graph().incident_edge_ids(v);
    for (const int e : ids) {
      const double c = net.conductance(e);
      if (c <= 0.0) continue;
      const Edge ed = net.graph().edges()[e];
      const Vertex w = ed.u == v ? ed.v : ed.u;
      const double p = c / cv;
      if (absorb[w]) {
        if (!expected_time) rhs[sys[v]] += p * boundary_value[w];
      } else {
        trip.push_back(Triplet(sys[v], sys[w], -p));
      }
    }
  }
  SpMat M(dim, dim);
  M.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseLU<SpMat> lu(M);
  if (lu.info() != Eigen::Success)
    throw std::runtime_error("walk solve: factorization failed (walk not absorbed a.s.?)");
  const Eigen::VectorXd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success) throw std::runtime_error("walk solve: solve failed");
  for (int v = 0; v < n; ++v)
    if (sys[v] >= 0) out[v] = x[sys[v]];
  return out;
}

void require_same_component(const Network& net, Vertex a, Vertex z, const char* what) {
  // Connectivity in the positive-conductance graph.
  const int n = net.vertex_count();
  std::vector<char> seen(n, 0);
  std::queue<Vertex> q;
  seen[a] = 1;
  q.push(a);
  while (!q.empty()) {
    const Vertex v = q.front();
    q.pop();
    for (const int e : net.graph().incident_edge_ids(v)) {
      if (net.conductance(e) <= 0.0) continue;
      const Edge ed = net.graph().edges()[e];
      const Vertex w = ed.u == v ? ed.v : ed.u;
      if (!seen[w]) {
        seen[w] = 1;
        q.push(w);
      }
    }
  }
  if (!seen[z]) throw std::invalid_argument(std::string(what) + ": endpoints are disconnected");
}

}  // namespace

double escape_probability(const Network& net, Vertex a, Vertex z) {
  check_vertices(net, {a, z}, "escape_probability");
  if (a == z) throw std::invalid_argument("escape_probability: endpoints must differ");
  require_same_component(net, a, z, "escape_probability");
  // q(x) = P_x(hit z before a); fix q(a) = 0, q(z) = 1, then average the
  // first step out of a.
  std::vector<double> bv(net.vertex_count(), 0.0);
  bv[z] = 1.0;
  const auto q = solve_absorbing(net, {a, z}, bv, false);
  const double ca = net.conductance_sum(a);
  if (ca <= 0.0) throw std::invalid_argument("escape_probability: start vertex is isolated");
  double esc = 0.0;
  for (const int e : net.graph().incident_edge_ids(a)) {
    const double c = net.conductance(e);
    if (c <= 0.0) continue;
    const Edge ed = net.graph().edges()[e];
    const Vertex w = ed.u == a ? ed.v : ed.u;
    esc += (c / ca) * (w == z ? 1.0 : q[w]);
  }
  return esc;
}

std::pair<double, double> commute_time(const Network& net, Vertex a, Vertex z) {
  check_vertices(net, {a, z}, "commute_time");
  if (a == z) throw std::invalid_argument("commute_time: endpoints must differ");
  require_same_component(net, a, z, "commute_time");
  std::vector<double> dummy(net.vertex_count(), 0.0);
  const auto ta = solve_absorbing(net, {z}, dummy, true);
  const auto tz = solve_absorbing(net, {a}, dummy, true);
  return {ta[a], tz[z]};
}

std::vector<double> solve_boundary_value(const Network& net,
                                         const std::vector<std::pair<Vertex, double>>& boundary) {
  if (boundary.empty()) throw std::invalid_argument("solve_boundary_value: empty boundary");
  std::vector<Vertex> absorbing;
  std::vector<double> bv(net.vertex_count(), 0.0);
  for (const auto& [v, val] : boundary) {
    if (v < 0 || v >= net.vertex_count())
      throw std::invalid_argument("solve_boundary_value: vertex out of range");
    absorbing.push_back(v);
    bv[v] = val;
  }
  // solve_absorbing restricts itself to the part that can reach the
  // boundary; everything else comes back as 0, which is the contract here.
  return solve_absorbing(net, absorbing, bv, false);
}

std::vector<double> expected_absorption_time(const Network& net,
                                             const std::vector<Vertex>& targets) {
  if (targets.empty()) throw std::invalid_argument("expected_absorption_time: empty target set");
  check_vertices(net, targets, "expected_absorption_time");
  std::vector<double> dummy(net.vertex_count(), 0.0);
  return solve_absorbing(net, targets, dummy, true);
}

SpliceResult splice_flow(const Network& net, const std::vector<Vertex>& A, Vertex a, Vertex z) {
  check_vertices(net, A, "splice_flow: A");
  check_vertices(net, {a, z}, "splice_flow");
  const auto sa = dedup(A);
  if (!std::binary_search(sa.begin(), sa.end(), a))
    throw std::invalid_argument("splice_flow: a must belong to A");
  if (std::binary_search(sa.begin(), sa.end(), z))
    throw std::invalid_argument("splice_flow: z must lie outside A");

  std::vector<char> inA(net.vertex_count(), 0);
  for (const Vertex v : sa) inA[v] = 1;

  // Unit current flow from the contracted set A to z.
  const double reff_A_z = effective_resistance(net, sa, {z});
  if (std::isinf(reff_A_z)) throw std::invalid_argument("splice_flow: A and z are disconnected");
  Flow fA = unit_current_flow(net, sa, {z});

  // Exit flows alpha_v: flow leaving A at v.  Nonnegative for a current
  // flow out of the contracted source (up to roundoff).
  std::vector<double> alpha(sa.size(), 0.0);
  for (std::size_t i = 0; i < sa.size(); ++i) {
    const Vertex v = sa[i];
    for (const int e : net.graph().incident_edge_ids(v)) {
      const Edge ed = net.graph().edges()[e];
      const Vertex w = ed.u == v ? ed.v : ed.u;
      if (inA[w]) continue;
      alpha[i] += (ed.u == v) ? fA.value[e] : -fA.value[e];
    }
  }

  // Network with only A-internal edges kept; everything else infinite.
  std::vector<double> rA(net.edge_count(), kInfiniteResistance);
  for (int e = 0; e < net.edge_count(); ++e) {
    const Edge ed = net.graph().edges()[e];
    if (inA[ed.u] && inA[ed.v]) rA[e] = net.resistance(e);
  }
  const Network netA(net.graph(), rA);

  Flow spliced = fA;
  double max_internal = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    const Vertex v = sa[i];
    if (v == a) continue;
    const double r = effective_resistance(netA, a, v);
    if (std::isinf(r))
      throw std::invalid_argument(
          "splice_flow: a vertex of A is not reachable from a inside A (infinite internal "
          "resistance)");
    max_internal = std::max(max_internal, r);
    if (alpha[i] == 0.0) continue;
    const Flow fv = unit_current_flow(netA, std::vector<Vertex>{a}, std::vector<Vertex>{v});
    for (int e = 0; e < net.edge_count(); ++e) spliced.value[e] += alpha[i] * fv.value[e];
  }

  SpliceResult out;
  out.flow = std::move(spliced);
  out.flow.source = {a};
  out.flow.sink = {z};
  out.reff_A_z = reff_A_z;
  out.max_internal = max_internal;
  out.bound = reff_A_z + max_internal;
  out.alpha = std::move(alpha);

  // Audit the lemma on this instance before returning.
  const double e_spliced = flow_energy(net, out.flow);
  const double div = max_interior_divergence(net, out.flow);
  const double tol = 1e-8 * std::max(1.0, out.bound);
  if (div > 1e-8)
    throw std::runtime_error("splice_flow: spliced flow violates conservation");
  if (e_spliced > out.bound + tol)
    throw std::runtime_error("splice_flow: energy exceeds the splice bound");
  return out;
}

namespace {

// Dense determinant with partial pivoting in extended precision; local to
// the oracle so the oracle shares nothing with the solver path.
long double dense_det(std::vector<std::vector<long double>> m) {
  const int n = int(m.size());
  long double det = 1.0L;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs((double)m[r][col]) > std::abs((double)m[piv][col])) piv = r;
    if (m[piv][col] == 0.0L) return 0.0L;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (int r = col + 1; r < n; ++r) {
      const long double f = m[r][col] / m[col][col];
      for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

}  // namespace

double reff_matrix_tree_oracle(const Network& net, Vertex a, Vertex z) {
  check_vertices(net, {a, z}, "reff_matrix_tree_oracle");
  if (a == z) throw std::invalid_argument("reff_matrix_tree_oracle: endpoints must differ");
  const int n = net.vertex_count();
  if (n > 25)
    throw std::invalid_argument("reff_matrix_tree_oracle: guarded to networks with n <= 25");

  // Work on the positive-conductance component of a: spanning-forest
  // weights vanish identically on disconnected vertex sets.
  std::vector<int> id(n, -1);
  {
    std::queue<Vertex> q;
    id[a] = 0;
    int next = 1;
    q.push(a);
    while (!q.empty()) {
      const Vertex v = q.front();
      q.pop();
      for (const int e : net.graph().incident_edge_ids(v)) {
        if (net.conductance(e) <= 0.0) continue;
        const Edge ed = net.graph().edges()[e];
        const Vertex w = ed.u == v ? ed.v : ed.u;
        if (id[w] < 0) {
          id[w] = next++;
          q.push(w);
        }
      }
    }
  }
  if (id[z] < 0) return kInfiniteResistance;
  int m = 0;
  for (int v = 0; v < n; ++v) m = std::max(m, id[v] + 1);

  std::vector<std::vector<long double>> L(m, std::vector<long double>(m, 0.0L));
  for (int e = 0; e < net.edge_count(); ++e) {
    const double c = net.conductance(e);
    if (c <= 0.0) continue;
    const Edge ed = net.graph().edges()[e];
    if (id[ed.u] < 0 || id[ed.v] < 0) continue;
    const int i = id[ed.u], j = id[ed.v];
    L[i][i] += c;
    L[j][j] += c;
    L[i][j] -= c;
    L[j][i] -= c;
  }

  auto minor = [&](const std::vector<int>& drop) {
    std::vector<char> gone(m, 0);
    for (const int d : drop) gone[d] = 1;
    std::vector<std::vector<long double>> sub;
    for (int i = 0; i < m; ++i) {
      if (gone[i]) continue;
      std::vector<long double> row;
      for (int j = 0; j < m; ++j)
        if (!gone[j]) row.push_back(L[i][j]);
      sub.push_back(std::move(row));
    }
    return sub;
  };

  const long double det_a = dense_det(minor({id[a]}));
  if (det_a <= 0.0L) return kInfiniteResistance;
  const long double det_az = dense_det(minor({id[a], id[z]}));
  return double(det_az / det_a);
}

}  // namespace pll

#pragma once

// Electrical networks: an embedded graph plus one resistance per edge.
// Infinite resistance is legal and is represented as an absent conductance
// (c_e = 0); floating-point infinity never enters a linear solve.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "pll/graph.hpp"

namespace pll {

class Network {
 public:
  Network() = default;
  Network(PlanarGraph g, std::vector<double> resistance)
      : graph_(std::move(g)), resistance_(std::move(resistance)) {
    if (int(resistance_.size()) != graph_.edge_count())
      throw std::invalid_argument("Network: one resistance per edge required");
    conductance_.resize(resistance_.size());
    for (std::size_t e = 0; e < resistance_.size(); ++e) {
      const double r = resistance_[e];
      if (std::isnan(r) || r <= 0.0)
        throw std::invalid_argument("Network: resistances must be positive (or infinite)");
      conductance_[e] = std::isinf(r) ? 0.0 : 1.0 / r;
    }
    csum_.assign(graph_.vertex_count(), 0.0);
    total_ = 0.0;
    for (int e = 0; e < graph_.edge_count(); ++e) {
      const Edge ed = graph_.edges()[e];
      csum_[ed.u] += conductance_[e];
      csum_[ed.v] += conductance_[e];
      total_ += conductance_[e];
    }
  }

  static Network unit(PlanarGraph g) {
    std::vector<double> r(g.edge_count(), 1.0);
    return Network(std::move(g), std::move(r));
  }

  const PlanarGraph& graph() const { return graph_; }
  int vertex_count() const { return graph_.vertex_count(); }
  int edge_count() const { return graph_.edge_count(); }

  double resistance(int e) const { return resistance_[e]; }
  double conductance(int e) const { return conductance_[e]; }
  const std::vector<double>& resistances() const { return resistance_; }

  // Sum of conductances at v (the walk's normalizing constant C_v).
  double conductance_sum(Vertex v) const { return csum_[v]; }
  // Sum of conductances over all edges.
  double total_conductance() const { return total_; }

 private:
  PlanarGraph graph_;
  std::vector<double> resistance_;
  std::vector<double> conductance_;
  std::vector<double> csum_;
  double total_ = 0.0;
};

// Antisymmetric edge flow: value[e] is the flow from edges()[e].u toward
// edges()[e].v; the reverse orientation is the negation.
struct Flow {
  std::vector<double> value;
  std::vector<Vertex> source;
  std::vector<Vertex> sink;
  double strength = 1.0;
};

// Net flow out of v.
double flow_divergence(const Network& net, const Flow& f, Vertex v);
// Largest |divergence| over vertices outside source and sink sets.
double max_interior_divergence(const Network& net, const Flow& f);
// Energy sum R_e * theta_e^2.  An edge of infinite resistance contributes 0
// when it carries (numerically) no flow and +infinity otherwise.
double flow_energy(const Network& net, const Flow& f);

// Vertex potential with boundary sets A (value 0) and Z (value 1).
struct Potential {
  std::vector<double> value;
  std::vector<Vertex> A;
  std::vector<Vertex> Z;
};

inline constexpr double kInfiniteResistance = std::numeric_limits<double>::infinity();

}  // namespace pll

#pragma once

// Empirical local-limit machinery: root sampling under the uniform or the
// degree-biased (stationary) law, exact and Monte Carlo distributions of
// rooted r-ball isomorphism codes, total-variation comparisons at fixed
// radius, and degree exceedance curves with exponential-tail fits.

#include <cstdint>
#include <map>
#include <vector>

#include "pll/canonical.hpp"
#include "pll/graph.hpp"
#include "pll/rng.hpp"
#include "pll/stats.hpp"

namespace pll {

enum class RootLaw {
  Uniform,     // every vertex equally likely
  Stationary,  // probability proportional to degree
};

// Exact draw from the chosen root law.  Stationary mode requires every
// vertex to have positive degree.
Vertex sample_root(const PlanarGraph& g, RootLaw mode, Rng& rng);
Vertex sample_root(const PlanarGraph& g, RootLaw mode, std::uint64_t seed);

struct BallHistogram {
  std::map<CanonicalCode, double> prob;  // code of B(root, r) -> probability
  int radius = 0;
  std::int64_t samples = 0;  // 0 marks an exact census
  RootLaw mode = RootLaw::Uniform;
};

// Monte Carlo histogram of the canonical code of the r-ball around a root
// drawn from `mode`; trial i uses the stream Rng(seed, i).
BallHistogram ball_histogram(const PlanarGraph& g, int r, std::int64_t samples, RootLaw mode,
                             std::uint64_t seed);

// Exact census: every vertex contributes its ball with its root-law weight.
BallHistogram ball_census(const PlanarGraph& g, int r, RootLaw mode);

// Half the l1 distance between two code distributions of equal radius.
double tv_distance(const BallHistogram& a, const BallHistogram& b);

struct TailCurve {
  std::vector<int> k;                 // thresholds with positive exceedance
  std::vector<double> exceedance;     // P(value >= k) under the root law
  std::vector<std::int64_t> count;    // raw number of vertices with value >= k
  LinearFit fit;                      // log exceedance vs. k, over count >= 10
  bool fit_valid = false;             // enough well-populated thresholds to fit
};

struct DegreeTail {
  TailCurve degree;        // value = deg(root)
  TailCurve neighbor_max;  // value = max degree over the root's neighbors
};

// Exact exceedance curves of the root degree and of the neighbor-max degree
// under the chosen root law, each with a least-squares exponential-tail fit
// restricted to thresholds attained by at least 10 vertices.
DegreeTail degree_tail(const PlanarGraph& g, RootLaw mode);

}  // namespace pll

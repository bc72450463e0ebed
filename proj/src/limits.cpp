#include "pll/limits.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pll {

namespace {

void require_rootable(const PlanarGraph& g, RootLaw mode, const char* what) {
  if (g.vertex_count() == 0) throw std::invalid_argument(std::string(what) + ": empty graph");
  if (mode == RootLaw::Stationary)
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      if (g.degree(v) == 0)
        throw std::invalid_argument(std::string(what) +
                                    ": stationary law undefined with isolated vertices");
}

double root_weight(const PlanarGraph& g, RootLaw mode, Vertex v) {
  if (mode == RootLaw::Uniform) return 1.0 / double(g.vertex_count());
  return double(g.degree(v)) / (2.0 * double(g.edge_count()));
}

TailCurve exceedance_curve(const std::vector<int>& value, const std::vector<double>& weight) {
  const int n = int(value.size());
  const int top = n == 0 ? 0 : *std::max_element(value.begin(), value.end());
  TailCurve curve;
  for (int k = 1; k <= top; ++k) {
    double p = 0.0;
    std::int64_t c = 0;
    for (int v = 0; v < n; ++v)
      if (value[v] >= k) {
        p += weight[v];
        ++c;
      }
    if (c == 0) continue;
    curve.k.push_back(k);
    curve.exceedance.push_back(p);
    curve.count.push_back(c);
  }
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < curve.k.size(); ++i)
    if (curve.count[i] >= 10) {
      xs.push_back(double(curve.k[i]));
      ys.push_back(std::log(curve.exceedance[i]));
    }
  if (xs.size() >= 2 && xs.front() != xs.back()) {
    curve.fit = linear_fit(xs, ys);
    curve.fit_valid = true;
  }
  return curve;
}

}  // namespace

Vertex sample_root(const PlanarGraph& g, RootLaw mode, Rng& rng) {
  require_rootable(g, mode, "sample_root");
  if (mode == RootLaw::Uniform) return Vertex(rng.below(std::uint32_t(g.vertex_count())));
  // Degree-proportional pick via the directed-edge count, exactly.
  const std::uint32_t total = std::uint32_t(2 * g.edge_count());
  std::uint32_t target = rng.below(total);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const std::uint32_t d = std::uint32_t(g.degree(v));
    if (target < d) return v;
    target -= d;
  }
  throw std::logic_error("sample_root: degree prefix sums are inconsistent");
}

Vertex sample_root(const PlanarGraph& g, RootLaw mode, std::uint64_t seed) {
  Rng rng(seed);
  return sample_root(g, mode, rng);
}

BallHistogram ball_histogram(const PlanarGraph& g, int r, std::int64_t samples, RootLaw mode,
                             std::uint64_t seed) {
  require_rootable(g, mode, "ball_histogram");
  if (r < 0) throw std::invalid_argument("ball_histogram: radius must be nonnegative");
  if (samples <= 0) throw std::invalid_argument("ball_histogram: need a positive sample count");
  BallHistogram h;
  h.radius = r;
  h.samples = samples;
  h.mode = mode;
  const double w = 1.0 / double(samples);
  for (std::int64_t i = 0; i < samples; ++i) {
    Rng rng(seed, std::uint64_t(i));
    const Vertex root = sample_root(g, mode, rng);
    h.prob[canonical_code(ball(g, root, r))] += w;
  }
  return h;
}

BallHistogram ball_census(const PlanarGraph& g, int r, RootLaw mode) {
  require_rootable(g, mode, "ball_census");
  if (r < 0) throw std::invalid_argument("ball_census: radius must be nonnegative");
  BallHistogram h;
  h.radius = r;
  h.samples = 0;
  h.mode = mode;
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    h.prob[canonical_code(ball(g, v, r))] += root_weight(g, mode, v);
  return h;
}

double tv_distance(const BallHistogram& a, const BallHistogram& b) {
  if (a.radius != b.radius) throw std::invalid_argument("tv_distance: radius mismatch");
  double sum = 0.0;
  auto ia = a.prob.begin();
  auto ib = b.prob.begin();
  while (ia != a.prob.end() || ib != b.prob.end()) {
    if (ib == b.prob.end() || (ia != a.prob.end() && ia->first < ib->first)) {
      sum += ia->second;
      ++ia;
    } else if (ia == a.prob.end() || ib->first < ia->first) {
      sum += ib->second;
      ++ib;
    } else {
      sum += std::abs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return 0.5 * sum;
}

DegreeTail degree_tail(const PlanarGraph& g, RootLaw mode) {
  require_rootable(g, mode, "degree_tail");
  const int n = g.vertex_count();
  std::vector<int> deg(n), nbr_max(n, 0);
  std::vector<double> weight(n);
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    for (const Vertex u : g.neighbors(v)) nbr_max[v] = std::max(nbr_max[v], g.degree(u));
    weight[v] = root_weight(g, mode, v);
  }
  DegreeTail tail;
  tail.degree = exceedance_curve(deg, weight);
  tail.neighbor_max = exceedance_curve(nbr_max, weight);
  return tail;
}

}  // namespace pll

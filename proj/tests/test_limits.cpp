#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "pll/generators.hpp"
#include "pll/limits.hpp"
#include "support.hpp"

using pll::BallHistogram;
using pll::PlanarGraph;
using pll::RootLaw;
using pll::Vertex;

namespace {

PlanarGraph star(int leaves) {
  std::vector<std::vector<Vertex>> rot(std::size_t(leaves) + 1);
  for (Vertex l = 1; l <= leaves; ++l) {
    rot[0].push_back(l);
    rot[std::size_t(l)] = {0};
  }
  return PlanarGraph(leaves + 1, rot);
}

PlanarGraph cycle(int n) {
  std::vector<std::vector<Vertex>> rot(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) rot[std::size_t(v)] = {(v + 1) % n, (v + n - 1) % n};
  return PlanarGraph(n, rot);
}

double census_prob_of_root(const BallHistogram& h, const PlanarGraph& g, Vertex root) {
  const auto it = h.prob.find(pll::canonical_code(pll::ball(g, root, h.radius)));
  REQUIRE(it != h.prob.end());
  return it->second;
}

double total_mass(const BallHistogram& h) {
  double sum = 0.0;
  for (const auto& [code, p] : h.prob) {
    CHECK(p > 0.0);
    CHECK(p <= 1.0 + 1e-12);
    sum += p;
  }
  return sum;
}

}  // namespace

TEST_CASE("star census at radius 1 under both root laws") {
  const PlanarGraph g = star(9);
  const BallHistogram uni = pll::ball_census(g, 1, RootLaw::Uniform);
  REQUIRE(uni.prob.size() == 2);  // center ball vs leaf ball
  CHECK(census_prob_of_root(uni, g, 0) == doctest::Approx(0.1));
  CHECK(census_prob_of_root(uni, g, 3) == doctest::Approx(0.9));
  const BallHistogram sta = pll::ball_census(g, 1, RootLaw::Stationary);
  CHECK(census_prob_of_root(sta, g, 0) == doctest::Approx(0.5));
  CHECK(census_prob_of_root(sta, g, 3) == doctest::Approx(0.5));
  CHECK(sta.samples == 0);
  CHECK(sta.radius == 1);
}

TEST_CASE("square grid census at radius 1 has the three corner/edge/interior classes") {
  const PlanarGraph g = pll::grid_graph(5, 5);
  const BallHistogram uni = pll::ball_census(g, 1, RootLaw::Uniform);
  REQUIRE(uni.prob.size() == 3);
  CHECK(census_prob_of_root(uni, g, 0) == doctest::Approx(0.16));   // 4 corners
  CHECK(census_prob_of_root(uni, g, 2) == doctest::Approx(0.48));   // 12 side vertices
  CHECK(census_prob_of_root(uni, g, 6) == doctest::Approx(0.36));   // 9 interior
  const BallHistogram sta = pll::ball_census(g, 1, RootLaw::Stationary);
  CHECK(census_prob_of_root(sta, g, 0) == doctest::Approx(0.1));    // 4*2/80
  CHECK(census_prob_of_root(sta, g, 2) == doctest::Approx(0.45));   // 12*3/80
  CHECK(census_prob_of_root(sta, g, 6) == doctest::Approx(0.45));   // 9*4/80
}

TEST_CASE("sampled histogram converges to the census") {
  const PlanarGraph g = pll::grid_graph(5, 5);
  for (const RootLaw mode : {RootLaw::Uniform, RootLaw::Stationary}) {
    const BallHistogram census = pll::ball_census(g, 1, mode);
    const BallHistogram mc = pll::ball_histogram(g, 1, 20000, mode, 2024);
    CHECK(pll::tv_distance(census, mc) < 0.02);
    CHECK(mc.samples == 20000);
    CHECK(total_mass(mc) == doctest::Approx(1.0));
  }
}

TEST_CASE("sampled histograms replay exactly") {
  const PlanarGraph g = pll::grid_graph(4, 4);
  const BallHistogram a = pll::ball_histogram(g, 1, 500, RootLaw::Uniform, 77);
  const BallHistogram b = pll::ball_histogram(g, 1, 500, RootLaw::Uniform, 77);
  CHECK(a.prob.size() == b.prob.size());
  CHECK(pll::tv_distance(a, b) == 0.0);
}

TEST_CASE("total variation: identical, disjoint, symmetric") {
  const BallHistogram grid = pll::ball_census(pll::grid_graph(5, 5), 1, RootLaw::Uniform);
  CHECK(pll::tv_distance(grid, grid) == 0.0);
  const pll::TriangularDisk disk = pll::triangular_disk(2);
  const BallHistogram tri = pll::ball_census(disk.graph, 1, RootLaw::Uniform);
  // Every 1-ball of the triangular lattice contains a triangle; no grid ball
  // does, so the code supports are disjoint.
  CHECK(pll::tv_distance(grid, tri) == doctest::Approx(1.0));
  CHECK(pll::tv_distance(tri, grid) == doctest::Approx(1.0));
  const BallHistogram r2 = pll::ball_census(pll::grid_graph(5, 5), 2, RootLaw::Uniform);
  CHECK_THROWS(pll::tv_distance(grid, r2));
}

TEST_CASE("census mass is 1 on random planar graphs") {
  pll::Rng rng(606, 0);
  for (int it = 0; it < 8; ++it) {
    const int n = 8 + int(rng.below(60));
    const PlanarGraph g = support::random_planar_subgraph(rng, n, 2500, 0.3);
    for (const RootLaw mode : {RootLaw::Uniform, RootLaw::Stationary}) {
      const BallHistogram h = pll::ball_census(g, 2, mode);
      CHECK(total_mass(h) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("degree exceedance on the cycle is flat") {
  const pll::DegreeTail tail = pll::degree_tail(cycle(10), RootLaw::Uniform);
  REQUIRE(tail.degree.k == std::vector<int>{1, 2});
  CHECK(tail.degree.exceedance[0] == doctest::Approx(1.0));
  CHECK(tail.degree.exceedance[1] == doctest::Approx(1.0));
  CHECK(tail.degree.count == std::vector<std::int64_t>{10, 10});
  REQUIRE(tail.degree.fit_valid);
  CHECK(std::abs(tail.degree.fit.slope) <= 1e-12);
  // Neighbor-max is also 2 everywhere.
  CHECK(tail.neighbor_max.k == std::vector<int>{1, 2});
  CHECK(tail.neighbor_max.exceedance[1] == doctest::Approx(1.0));
}

TEST_CASE("degree exceedance on the star splits by root law") {
  const PlanarGraph g = star(9);
  const pll::DegreeTail uni = pll::degree_tail(g, RootLaw::Uniform);
  REQUIRE(uni.degree.k.size() == 9);  // k = 1..9 all attained
  CHECK(uni.degree.exceedance[0] == doctest::Approx(1.0));
  CHECK(uni.degree.exceedance[1] == doctest::Approx(0.1));  // only the hub has deg >= 2
  CHECK(uni.degree.exceedance[8] == doctest::Approx(0.1));
  CHECK_FALSE(uni.degree.fit_valid);  // only the k=1 threshold has 10 vertices
  const pll::DegreeTail sta = pll::degree_tail(g, RootLaw::Stationary);
  CHECK(sta.degree.exceedance[1] == doctest::Approx(0.5));
  // Leaves see the hub: neighbor-max >= 9 with uniform probability 9/10.
  CHECK(uni.neighbor_max.exceedance[8] == doctest::Approx(0.9));
  CHECK(sta.neighbor_max.exceedance[8] == doctest::Approx(0.5));
}

TEST_CASE("uniform-law exceedance equals counts over n") {
  const PlanarGraph g = pll::bundled_tree(8, 0.5).network.graph();
  const pll::DegreeTail tail = pll::degree_tail(g, RootLaw::Uniform);
  const double n = double(g.vertex_count());
  REQUIRE(!tail.degree.k.empty());
  CHECK(tail.degree.exceedance.front() == doctest::Approx(1.0));
  for (std::size_t i = 0; i < tail.degree.k.size(); ++i)
    CHECK(tail.degree.exceedance[i] == doctest::Approx(double(tail.degree.count[i]) / n));
  for (std::size_t i = 1; i < tail.degree.k.size(); ++i)
    CHECK(tail.degree.exceedance[i] <= tail.degree.exceedance[i - 1] + 1e-15);
}

TEST_CASE("root sampling matches its law") {
  const PlanarGraph g = star(9);
  pll::Rng rng(13, 0);
  int hub_uniform = 0, hub_stationary = 0;
  const int trials = 20000;
  for (int t = 0; t < trials; ++t) {
    if (pll::sample_root(g, RootLaw::Uniform, rng) == 0) ++hub_uniform;
    if (pll::sample_root(g, RootLaw::Stationary, rng) == 0) ++hub_stationary;
  }
  // 4 sigma windows around 1/10 and 1/2.
  CHECK(std::abs(hub_uniform / double(trials) - 0.1) < 4.0 * std::sqrt(0.09 / trials));
  CHECK(std::abs(hub_stationary / double(trials) - 0.5) < 4.0 * std::sqrt(0.25 / trials));
  // Seeded one-shot form replays.
  CHECK(pll::sample_root(g, RootLaw::Stationary, 99u) ==
        pll::sample_root(g, RootLaw::Stationary, 99u));
}

TEST_CASE("stationary law rejects isolated vertices, uniform tolerates them") {
  const PlanarGraph g(3, {{1}, {0}, {}});
  CHECK_THROWS(pll::ball_census(g, 1, RootLaw::Stationary));
  CHECK_THROWS(pll::degree_tail(g, RootLaw::Stationary));
  CHECK(total_mass(pll::ball_census(g, 1, RootLaw::Uniform)) == doctest::Approx(1.0));
}

TEST_CASE("histogram parameter validation") {
  const PlanarGraph g = pll::grid_graph(3, 3);
  CHECK_THROWS(pll::ball_histogram(g, -1, 10, RootLaw::Uniform, 1));
  CHECK_THROWS(pll::ball_histogram(g, 1, 0, RootLaw::Uniform, 1));
  CHECK_THROWS(pll::ball_census(g, -2, RootLaw::Uniform));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "pll/electric.hpp"
#include "pll/generators.hpp"
#include "pll/json_io.hpp"
#include "pll/packing.hpp"
#include "pll/startree.hpp"
#include "pll/svg.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using pll::Json;
using pll::Network;
using pll::PlanarGraph;
using pll::Vertex;

namespace {

template <class F>
std::string thrown_message(F&& f) {
  try {
    std::forward<F>(f)();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t at = hay.find(needle); at != std::string::npos;
       at = hay.find(needle, at + needle.size()))
    ++count;
  return count;
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "pll_io_tests") {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("graphs round-trip through JSON with and without a root") {
  pll::Rng rng(2718, 0);
  for (int it = 0; it < 12; ++it) {
    const int n = 3 + int(rng.below(40));
    const PlanarGraph g = support::random_connected_graph(rng, n, 6);
    const std::optional<Vertex> root =
        it % 2 == 0 ? std::optional<Vertex>(Vertex(rng.below(std::uint64_t(n)))) : std::nullopt;
    const Json j = pll::graph_to_json(g, root);
    const pll::LoadedGraph back = pll::graph_from_json(j);
    CHECK(back.graph.vertex_count() == n);
    CHECK(back.graph.rotations() == g.rotations());
    CHECK(back.root == root);
  }
}

TEST_CASE("networks round-trip bit-exactly, including absent conductors") {
  pll::Rng rng(35, 1);
  for (int it = 0; it < 12; ++it) {
    const Network net = support::random_network(rng, 4 + int(rng.below(30)), 5, 0.1, 10.0, 0.3);
    const Json j = pll::network_to_json(net, 0);
    const pll::LoadedNetwork back = pll::network_from_json(j);
    REQUIRE(back.network.edge_count() == net.edge_count());
    for (int e = 0; e < net.edge_count(); ++e)
      CHECK(back.network.resistance(e) == net.resistance(e));
    CHECK(back.root == std::optional<Vertex>(0));
  }
}

TEST_CASE("a graph file without resistances loads as the unit network") {
  const PlanarGraph g = pll::grid_graph(3, 3);
  const pll::LoadedNetwork net = pll::network_from_json(pll::graph_to_json(g));
  for (int e = 0; e < net.network.edge_count(); ++e)
    CHECK(net.network.resistance(e) == 1.0);
  CHECK_FALSE(net.root.has_value());
}

TEST_CASE("readers name the offending field") {
  const Json good = pll::graph_to_json(pll::grid_graph(2, 2), 0);

  Json no_n = good;
  no_n.erase("n");
  CHECK(thrown_message([&] { pll::graph_from_json(no_n); }).find("\"n\"") !=
        std::string::npos);

  Json float_n = good;
  float_n["n"] = 2.5;
  CHECK(thrown_message([&] { pll::graph_from_json(float_n); }).find("\"n\"") !=
        std::string::npos);

  Json short_rot = good;
  short_rot["rot"].erase(3);
  CHECK(thrown_message([&] { pll::graph_from_json(short_rot); }).find("\"rot\"") !=
        std::string::npos);

  Json bad_row = good;
  bad_row["rot"][0] = "x";
  CHECK(thrown_message([&] { pll::graph_from_json(bad_row); }).find("\"rot\"") !=
        std::string::npos);

  Json big_root = good;
  big_root["root"] = 77;
  CHECK(thrown_message([&] { pll::graph_from_json(big_root); }).find("\"root\"") !=
        std::string::npos);

  Json bad_r = pll::network_to_json(Network::unit(pll::grid_graph(2, 2)));
  bad_r["R"].erase(3);
  CHECK(thrown_message([&] { pll::network_from_json(bad_r); }).find("\"R\"") !=
        std::string::npos);

  Json bad_r_word = pll::network_to_json(Network::unit(pll::grid_graph(2, 2)));
  bad_r_word["R"][0] = "infinity";
  CHECK(thrown_message([&] { pll::network_from_json(bad_r_word); }).find("\"R\"") !=
        std::string::npos);

  Json bad_cloud;
  bad_cloud["points"] = Json::array({Json::array({1.0})});
  CHECK(thrown_message([&] { pll::cloud_from_json(bad_cloud); }).find("\"points\"") !=
        std::string::npos);
}

TEST_CASE("clouds round-trip") {
  pll::Rng rng(8, 0);
  std::vector<pll::Point> pts;
  for (int i = 0; i < 25; ++i) pts.push_back({rng.next_double(), rng.next_double()});
  const pll::PointCloud cloud = pll::make_point_cloud(pts);
  const pll::PointCloud back = pll::cloud_from_json(pll::cloud_to_json(cloud));
  REQUIRE(back.points.size() == pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(back.points[i].x == pts[i].x);
    CHECK(back.points[i].y == pts[i].y);
    CHECK(back.isolation[i] == cloud.isolation[i]);
  }
}

TEST_CASE("flows round-trip and validate") {
  const PlanarGraph g = pll::tetrahedron();
  const pll::Flow theta =
      pll::unit_current_flow(Network::unit(g), {0}, {3});
  const Json j = pll::flow_to_json(theta);
  const pll::Flow back = pll::flow_from_json(j, g.edge_count());
  CHECK(back.value == theta.value);
  CHECK(back.source == theta.source);
  CHECK(back.sink == theta.sink);
  CHECK(back.strength == theta.strength);

  Json short_value = j;
  short_value["value"].erase(0);
  CHECK(thrown_message([&] { pll::flow_from_json(short_value, g.edge_count()); })
            .find("\"value\"") != std::string::npos);
  Json bad_source = j;
  bad_source["source"][0] = 1.5;
  CHECK(thrown_message([&] { pll::flow_from_json(bad_source, g.edge_count()); })
            .find("\"source\"") != std::string::npos);
  Json bad_strength = j;
  bad_strength["strength"] = "one";
  CHECK(thrown_message([&] { pll::flow_from_json(bad_strength, g.edge_count()); })
            .find("\"strength\"") != std::string::npos);
}

TEST_CASE("transformed networks serialize with their markings") {
  const PlanarGraph triangle(3, {{1, 2}, {2, 0}, {0, 1}});
  const pll::StarTransform st = pll::star_tree_transform(triangle);
  const Json j = pll::startree_to_json(st);
  CHECK(j["n"] == 6);
  REQUIRE(j["kind"].size() == 6);
  int roots = 0, leaves = 0, internals = 0;
  for (const auto& k : j["kind"]) {
    if (k == "root") ++roots;
    if (k == "leaf") ++leaves;
    if (k == "internal") ++internals;
  }
  CHECK(roots == 3);
  CHECK(leaves == 3);
  CHECK(internals == 0);
  for (const auto& m : j["mark"]) CHECK(m == 2);
  for (const auto& r : j["R"]) CHECK(r == 0.5);
  CHECK(j["owner"][0] == 0);
  CHECK(j["owner"][3] == -1);       // shared leaves are unowned
  CHECK(j["origin_edge"][0] == -1);  // roots have no originating edge
  CHECK(j["origin_edge"][3] >= 0);
}

TEST_CASE("packings serialize centers and radii") {
  const pll::TriangularDisk disk = pll::triangular_disk(2);
  const pll::PackingResult res = pll::pack_triangulation(
      disk.graph, disk.boundary, std::vector<double>(disk.boundary.size(), 1.0));
  const Json j = pll::packing_to_json(res.packing);
  REQUIRE(int(j["centers"].size()) == disk.graph.vertex_count());
  REQUIRE(int(j["radii"].size()) == disk.graph.vertex_count());
  CHECK(double(j["radii"][std::size_t(disk.center)]) ==
        res.packing.radius[std::size_t(disk.center)]);
}

TEST_CASE("atomic saves leave a clean, newline-terminated, stable file") {
  TempDir tmp;
  const fs::path target = tmp.path / "net.json";
  const Json j = pll::network_to_json(Network::unit(pll::grid_graph(3, 2)), 1);
  pll::save_json_atomic(target, j);
  CHECK(fs::exists(target));
  CHECK_FALSE(fs::exists(tmp.path / "net.json.tmp"));
  const std::string first = slurp(target);
  REQUIRE(!first.empty());
  CHECK(first.back() == '\n');
  // Keys are emitted in sorted order; "R" (uppercase) precedes "n".
  CHECK(first.find("\"R\"") < first.find("\"n\""));
  pll::save_json_atomic(target, j);
  CHECK(slurp(target) == first);
  // And the parsed file round-trips to the same document.
  CHECK(pll::load_json_file(target) == j);
}

TEST_CASE("file loading errors are labelled with the path") {
  TempDir tmp;
  const fs::path missing = tmp.path / "nope.json";
  CHECK(thrown_message([&] { pll::load_json_file(missing); }).find("cannot open") !=
        std::string::npos);
  const fs::path broken = tmp.path / "broken.json";
  pll::save_text_atomic(broken, "{\"n\": 3, ");
  CHECK(thrown_message([&] { pll::load_json_file(broken); }).find("broken.json") !=
        std::string::npos);
}

TEST_CASE("SVG output is structural and byte-stable") {
  const pll::TriangularDisk disk = pll::triangular_disk(2);
  const pll::PackingResult res = pll::pack_triangulation(
      disk.graph, disk.boundary, std::vector<double>(disk.boundary.size(), 1.0));
  const int n = disk.graph.vertex_count();

  pll::SvgOptions plain;
  plain.edges = true;
  const std::string with_edges = pll::render_packing_svg(res.packing, plain);
  CHECK(count_occurrences(with_edges, "<circle") == std::size_t(n));
  CHECK(count_occurrences(with_edges, "<line") == std::size_t(disk.graph.edge_count()));
  CHECK(with_edges == pll::render_packing_svg(res.packing, plain));

  pll::SvgOptions bare;
  bare.edges = false;
  bare.root = disk.center;
  const std::string rooted = pll::render_packing_svg(res.packing, bare);
  CHECK(count_occurrences(rooted, "<line") == 0);
  CHECK(count_occurrences(rooted, "<circle") == std::size_t(n) + 1);  // highlight ring
  CHECK(rooted.find("#d45500") != std::string::npos);
  CHECK(with_edges.find("#d45500") == std::string::npos);

  pll::SvgOptions bad;
  bad.root = n + 5;
  CHECK_THROWS(pll::render_packing_svg(res.packing, bad));
}

#pragma once

// JSON (de)serialization and atomic file output.
//
// File formats (all plain JSON):
//   graph    {"n": int, "rot": [[neighbor ids in cyclic order], ...], "root": int?}
//   network  graph object plus "R": [per-edge resistance, the string "inf"
//            for an absent (infinite-resistance) conductor], aligned with the
//            canonical edge order of PlanarGraph::edges() (u < v, sorted by u
//            and then by the position of v in u's rotation)
//   packing  {"centers": [[x, y], ...], "radii": [...]}
//   cloud    {"points": [[x, y], ...]}
//   flow     {"strength": s, "source": [...], "sink": [...], "value": [per-edge]}
//
// Readers validate shape and ranges and throw std::runtime_error with the
// offending field named.  Writers emit keys in sorted order with two-space
// indentation, so identical inputs produce byte-identical files.

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "pll/graph.hpp"
#include "pll/network.hpp"
#include "pll/packing.hpp"
#include "pll/startree.hpp"
#include "pll/supported.hpp"

namespace pll {

using Json = nlohmann::json;

struct LoadedGraph {
  PlanarGraph graph;
  std::optional<Vertex> root;
};

struct LoadedNetwork {
  Network network;
  std::optional<Vertex> root;
};

Json graph_to_json(const PlanarGraph& g, std::optional<Vertex> root = std::nullopt);
LoadedGraph graph_from_json(const Json& j);

Json network_to_json(const Network& net, std::optional<Vertex> root = std::nullopt);
// A graph file without "R" loads as the unit-resistance network.
LoadedNetwork network_from_json(const Json& j);

Json packing_to_json(const CirclePacking& p);

Json cloud_to_json(const PointCloud& c);
PointCloud cloud_from_json(const Json& j);

Json flow_to_json(const Flow& f);
// edge_count: number of edges of the graph the flow must live on.
Flow flow_from_json(const Json& j, int edge_count);

// Transformed network together with its per-vertex markings: network keys
// plus "kind" ("root" / "internal" / "leaf"), "mark", "owner", "origin_edge".
Json startree_to_json(const StarTransform& st);

// Parse with a path-labelled error message.
Json load_json_file(const std::filesystem::path& path);

// Write via a temporary file in the same directory plus rename, so readers
// never observe a partial file.  save_json_atomic appends a trailing newline.
void save_text_atomic(const std::filesystem::path& path, const std::string& text);
void save_json_atomic(const std::filesystem::path& path, const Json& j);

}  // namespace pll

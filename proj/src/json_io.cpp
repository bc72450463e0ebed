#include "pll/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pll {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error(what); }

const Json& require_field(const Json& j, const char* key) {
  if (!j.is_object()) fail("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field \"") + key + "\"");
  return *it;
}

int require_int(const Json& j, const char* key) {
  const Json& v = require_field(j, key);
  if (!v.is_number_integer()) fail(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

}  // namespace

Json graph_to_json(const PlanarGraph& g, std::optional<Vertex> root) {
  Json rot = Json::array();
  for (Vertex v = 0; v < g.vertex_count(); ++v) rot.push_back(g.neighbors(v));
  Json j;
  j["n"] = g.vertex_count();
  j["rot"] = std::move(rot);
  if (root) j["root"] = *root;
  return j;
}

LoadedGraph graph_from_json(const Json& j) {
  const int n = require_int(j, "n");
  if (n < 0) fail("field \"n\" must be non-negative");
  const Json& rot = require_field(j, "rot");
  if (!rot.is_array() || int(rot.size()) != n)
    fail("field \"rot\" must be an array of n neighbor lists");
  std::vector<std::vector<Vertex>> rows(n);
  for (int v = 0; v < n; ++v) {
    const Json& row = rot[v];
    if (!row.is_array()) fail("field \"rot\" must contain arrays of vertex ids");
    rows[v].reserve(row.size());
    for (const Json& x : row) {
      if (!x.is_number_integer()) fail("field \"rot\" must contain integer vertex ids");
      rows[v].push_back(x.get<Vertex>());
    }
  }
  LoadedGraph out{PlanarGraph(n, std::move(rows)), std::nullopt};
  if (j.contains("root")) {
    const int r = require_int(j, "root");
    if (r < 0 || r >= n) fail("field \"root\" out of range");
    out.root = r;
  }
  return out;
}

Json network_to_json(const Network& net, std::optional<Vertex> root) {
  Json j = graph_to_json(net.graph(), root);
  Json r = Json::array();
  for (int e = 0; e < net.edge_count(); ++e) {
    const double x = net.resistance(e);
    if (std::isinf(x))
      r.push_back("inf");
    else
      r.push_back(x);
  }
  j["R"] = std::move(r);
  return j;
}

LoadedNetwork network_from_json(const Json& j) {
  LoadedGraph lg = graph_from_json(j);
  const int m = lg.graph.edge_count();
  std::vector<double> res(m, 1.0);
  if (j.contains("R")) {
    const Json& r = j.at("R");
    if (!r.is_array() || int(r.size()) != m)
      fail("field \"R\" must list one resistance per edge");
    for (int e = 0; e < m; ++e) {
      const Json& x = r[e];
      if (x.is_string()) {
        if (x.get<std::string>() != "inf")
          fail("field \"R\" entries must be numbers or \"inf\"");
        res[e] = kInfiniteResistance;
      } else if (x.is_number()) {
        res[e] = x.get<double>();
      } else {
        fail("field \"R\" entries must be numbers or \"inf\"");
      }
    }
  }
  return LoadedNetwork{Network(std::move(lg.graph), std::move(res)), lg.root};
}

Json packing_to_json(const CirclePacking& p) {
  Json centers = Json::array();
  for (const Point& c : p.center) centers.push_back(Json::array({c.x, c.y}));
  Json j;
  j["centers"] = std::move(centers);
  j["radii"] = p.radius;
  return j;
}

Json cloud_to_json(const PointCloud& c) {
  Json pts = Json::array();
  for (const Point& p : c.points) pts.push_back(Json::array({p.x, p.y}));
  Json j;
  j["points"] = std::move(pts);
  return j;
}

PointCloud cloud_from_json(const Json& j) {
  const Json& pts = require_field(j, "points");
  if (!pts.is_array()) fail("field \"points\" must be an array of [x, y] pairs");
  std::vector<Point> points;
  points.reserve(pts.size());
  for (const Json& p : pts) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      fail("field \"points\" must be an array of [x, y] pairs");
    points.push_back(Point{p[0].get<double>(), p[1].get<double>()});
  }
  return make_point_cloud(points);
}

Json flow_to_json(const Flow& f) {
  Json j;
  j["strength"] = f.strength;
  j["source"] = f.source;
  j["sink"] = f.sink;
  j["value"] = f.value;
  return j;
}

Flow flow_from_json(const Json& j, int edge_count) {
  Flow f;
  const Json& value = require_field(j, "value");
  if (!value.is_array() || int(value.size()) != edge_count)
    fail("field \"value\" must list one flow value per edge");
  f.value.reserve(edge_count);
  for (const Json& x : value) {
    if (!x.is_number()) fail("field \"value\" entries must be numbers");
    f.value.push_back(x.get<double>());
  }
  for (const char* key : {"source", "sink"}) {
    const Json& side = require_field(j, key);
    if (!side.is_array()) fail(std::string("field \"") + key + "\" must be a vertex array");
    auto& dst = key[1] == 'o' ? f.source : f.sink;
    for (const Json& x : side) {
      if (!x.is_number_integer()) fail(std::string("field \"") + key + "\" must hold integers");
      dst.push_back(x.get<Vertex>());
    }
  }
  if (j.contains("strength")) {
    const Json& s = j.at("strength");
    if (!s.is_number()) fail("field \"strength\" must be a number");
    f.strength = s.get<double>();
  }
  return f;
}

Json startree_to_json(const StarTransform& st) {
  Json j = network_to_json(st.network);
  Json kind = Json::array();
  for (StarVertexKind k : st.kind) {
    switch (k) {
      case StarVertexKind::Root: kind.push_back("root"); break;
      case StarVertexKind::Internal: kind.push_back("internal"); break;
      case StarVertexKind::EdgeLeaf: kind.push_back("leaf"); break;
    }
  }
  j["kind"] = std::move(kind);
  j["mark"] = st.mark;
  j["owner"] = st.owner;
  j["origin_edge"] = st.origin_edge;
  return j;
}

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(path.string() + ": " + e.what());
  }
}

void save_text_atomic(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail("cannot open " + tmp.string() + " for writing");
    out << text;
    out.flush();
    if (!out) fail("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    fail("cannot move " + tmp.string() + " into place: " + ec.message());
  }
}

void save_json_atomic(const std::filesystem::path& path, const Json& j) {
  save_text_atomic(path, j.dump(2) + "\n");
}

}  // namespace pll

#include "pll/canonical.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace pll {

namespace {

void push_varint(std::vector<std::uint8_t>& out, std::uint64_t x) {
  while (x >= 0x80) {
    out.push_back(std::uint8_t(x) | 0x80);
    x >>= 7;
  }
  out.push_back(std::uint8_t(x));
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
  bool same(int a, int b) { return find(a) == find(b); }
};

class Canonicalizer {
 public:
  explicit Canonicalizer(const PlanarGraph& g) : g_(g), n_(g.vertex_count()) {}

  std::vector<std::uint8_t> run(Vertex root) {
    std::vector<int> color(n_, 0);
    color[root] = 1;
    auto [code, labels] = search(std::move(color));
    (void)labels;
    return code;
  }

 private:
  using Labeling = std::vector<int>;  // canonical position per vertex
  using Leaf = std::pair<std::vector<std::uint8_t>, Labeling>;

  // Iterated refinement: split cells by the multiset of neighbor colors
  // until the partition stabilizes.  Colors are ranks of sorted signatures,
  // hence label-independent.  Returns the number of cells.
  int refine(std::vector<int>& color) const {
    int cells = 0;
    for (;;) {
      std::vector<std::vector<int>> key(n_);
      for (Vertex v = 0; v < n_; ++v) {
        auto& k = key[v];
        k.reserve(g_.degree(v) + 1);
        k.push_back(color[v]);
        for (const Vertex w : g_.neighbors(v)) k.push_back(color[w]);
        std::sort(k.begin() + 1, k.end());
      }
      std::vector<int> order(n_);
      for (int v = 0; v < n_; ++v) order[v] = v;
      std::sort(order.begin(), order.end(),
                [&](int a, int b) { return key[a] < key[b]; });
      int next = 0;
      std::vector<int> fresh(n_);
      for (int i = 0; i < n_; ++i) {
        if (i > 0 && key[order[i]] != key[order[i - 1]]) ++next;
        fresh[order[i]] = next;
      }
      const int count = next + 1;
      color.swap(fresh);
      if (count == cells) return count;  // no cell split: stable
      cells = count;
      if (count == n_) return count;
    }
  }

  std::vector<std::uint8_t> encode(const std::vector<int>& canon, Vertex root_hint) const {
    std::vector<std::uint8_t> out;
    push_varint(out, std::uint64_t(n_));
    push_varint(out, std::uint64_t(canon[root_hint]));
    std::vector<int> vert_of(n_);
    for (int v = 0; v < n_; ++v) vert_of[canon[v]] = v;
    std::vector<int> nb;
    for (int c = 0; c < n_; ++c) {
      const Vertex v = vert_of[c];
      nb.clear();
      for (const Vertex w : g_.neighbors(v)) nb.push_back(canon[w]);
      std::sort(nb.begin(), nb.end());
      push_varint(out, std::uint64_t(nb.size()));
      for (const int x : nb) push_varint(out, std::uint64_t(x));
    }
    return out;
  }

  Leaf search(std::vector<int> color) {
    const int cells = refine(color);
    if (cells == n_) {
      // Root position is implied by the seed color; recover the root as the
      // vertex whose color was individualized first.  Encoding stores the
      // root position explicitly, so just find it: it is the vertex that
      // held color 1 initially — instead we thread it via member root_.
      return {encode(color, root_for_encode_), color};
    }
    // Target: the first (lowest-color) cell with at least two members.
    int target = -1;
    std::vector<int> size(cells, 0);
    for (int v = 0; v < n_; ++v) ++size[color[v]];
    for (int c = 0; c < cells; ++c)
      if (size[c] >= 2) {
        target = c;
        break;
      }
    std::vector<int> members;
    for (int v = 0; v < n_; ++v)
      if (color[v] == target) members.push_back(v);

    UnionFind orbits(n_);
    std::vector<std::pair<int, Leaf>> done;  // (candidate vertex, subtree best)
    Leaf best;
    bool have = false;
    for (const int v : members) {
      bool skip = false;
      for (const auto& [u, leaf] : done)
        if (orbits.same(u, v)) {
          skip = true;
          break;
        }
      if (skip) continue;
      std::vector<int> child = color;
      child[v] = n_;  // fresh largest color: individualize v
      Leaf leaf = search(std::move(child));
      // Equal subtree codes certify an automorphism fixing the current
      // partition; fold it into the orbit structure to prune siblings.
      for (const auto& [u, other] : done)
        if (other.first == leaf.first) {
          std::vector<int> vert_of(n_);
          for (int x = 0; x < n_; ++x) vert_of[other.second[x]] = x;
          for (int x = 0; x < n_; ++x) orbits.unite(x, vert_of[leaf.second[x]]);
        }
      if (!have || leaf.first < best.first) {
        best = leaf;
        have = true;
      }
      done.push_back({v, std::move(leaf)});
    }
    return best;
  }

 public:
  Vertex root_for_encode_ = 0;

 private:
  const PlanarGraph& g_;
  const int n_;
};

}  // namespace

std::string CanonicalCode::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (const std::uint8_t b : bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 0xF]);
  }
  return s;
}

CanonicalCode canonical_code(const PlanarGraph& g, Vertex root, int size_cap) {
  if (!g.simple()) throw std::invalid_argument("canonical_code: simple graphs only");
  if (root < 0 || root >= g.vertex_count())
    throw std::invalid_argument("canonical_code: root out of range");
  if (g.vertex_count() > size_cap)
    throw std::invalid_argument("canonical_code: graph exceeds the size cap");
  Canonicalizer c(g);
  c.root_for_encode_ = root;
  return CanonicalCode{c.run(root)};
}

namespace {

// Largest r <= budget with root-isomorphic r-balls (always >= 0), as codes.
int agreement_radius(const PlanarGraph& ga, Vertex ra, const PlanarGraph& gb, Vertex rb,
                     int budget) {
  int agree = -1;
  for (int r = 0; r <= budget; ++r) {
    const Ball a = ball(ga, ra, r);
    const Ball b = ball(gb, rb, r);
    if (canonical_code(a) == canonical_code(b))
      agree = r;
    else
      break;
  }
  if (agree < 0) throw std::logic_error("agreement_radius: radius-0 balls must agree");
  return agree;
}

}  // namespace

Rational rooted_distance(const Ball& a, const Ball& b) {
  if (a.radius != b.radius)
    throw std::invalid_argument("rooted_distance: balls must share the same radius budget");
  const int L = agreement_radius(a.graph, a.root, b.graph, b.root, a.radius);
  return Rational{1, (long long)L + 2};
}

Rational rooted_distance(const RootedGraph& a, const RootedGraph& b) {
  const auto da = a.graph.bfs_distances(a.root);
  const auto db = b.graph.bfs_distances(b.root);
  int ecc = 0;
  for (const int d : da) ecc = std::max(ecc, d);
  for (const int d : db) ecc = std::max(ecc, d);
  const int L = agreement_radius(a.graph, a.root, b.graph, b.root, ecc);
  return Rational{1, (long long)L + 2};
}

}  // namespace pll

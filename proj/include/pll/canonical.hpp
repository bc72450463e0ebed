#pragma once

// Canonical forms for rooted graphs.  Two rooted graphs get byte-identical
// codes exactly when a root-preserving isomorphism exists, so codes can key
// histograms and drive the local metric.  Exactness is obtained the classic
// way (iterated color refinement plus individualization with backtracking,
// as in McKay-style canonical labeling) rather than by hashing.

#include <cstdint>
#include <string>
#include <vector>

#include "pll/graph.hpp"

namespace pll {

struct CanonicalCode {
  std::vector<std::uint8_t> bytes;

  std::string hex() const;  // lowercase hex serialization

  friend bool operator==(const CanonicalCode& a, const CanonicalCode& b) {
    return a.bytes == b.bytes;
  }
  friend auto operator<=>(const CanonicalCode& a, const CanonicalCode& b) {
    return a.bytes <=> b.bytes;
  }
};

inline constexpr int kCanonicalSizeCap = 10000;

// Canonical code of a simple graph rooted at `root`.  Throws when the graph
// exceeds `size_cap` vertices (refinement-with-backtracking is exact but not
// meant for adversarially large instances).
CanonicalCode canonical_code(const PlanarGraph& g, Vertex root, int size_cap = kCanonicalSizeCap);

inline CanonicalCode canonical_code(const Ball& b, int size_cap = kCanonicalSizeCap) {
  return canonical_code(b.graph, b.root, size_cap);
}

struct Rational {
  long long num = 0;
  long long den = 1;
  double value() const { return double(num) / double(den); }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num * b.den == b.num * a.den;
  }
};

// Local distance between two rooted graphs observed up to a radius budget:
// 1/(alpha+1) where alpha is the supremum over real r >= 0 such that the
// r-balls are root-isomorphic.  Radius-0 balls are always isomorphic, so
// with L = largest integer radius at which the balls agree the supremum is
// L+1 and the distance is 1/(L+2); graphs already differing at radius 1 are
// at distance 1/2.
Rational rooted_distance(const Ball& a, const Ball& b);

// Same metric for whole rooted graphs: radii are explored until both balls
// stop growing.  For isomorphic inputs this returns the finite-truncation
// distance 1/(d+2) where d is the stabilization radius.
Rational rooted_distance(const RootedGraph& a, const RootedGraph& b);

}  // namespace pll

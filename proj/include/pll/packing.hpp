#pragma once

// Circle packings of finite planar triangulations: boundary-value radius
// computation (uniform-neighbor iteration with supersteps), deterministic
// breadth-first layout, similarity normalization, Ring-Lemma and tangency
// audits, Euclidean region queries, and annulus resistance profiles.

#include <cmath>
#include <variant>
#include <vector>

#include "pll/graph.hpp"
#include "pll/network.hpp"

namespace pll {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(Point a, Point b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

// One circle per vertex of the tangency graph; `boundary` records the outer
// face (whose radii were prescribed rather than solved for).
struct CirclePacking {
  PlanarGraph graph;
  std::vector<Point> center;
  std::vector<double> radius;
  std::vector<Vertex> boundary;
};

struct PackingResult {
  CirclePacking packing;
  int iterations = 0;       // radius sweeps performed
  double angle_error = 0.0; // final max |angle sum - 2 pi| over interior vertices
  double tangency_error = 0.0;
};

// Packs a simple planar triangulation whose faces are all triangles except
// the designated outer face `outer` (a cycle of length >= 3, arbitrary);
// outer radii are prescribed by `boundary_radii` (aligned with `outer`),
// interior radii are iterated until every interior angle sum is within
// `tol` of 2 pi, then circles are laid out breadth-first across faces with
// the orientation fixed by the rotation system.  Throws when the input is
// not such a triangulation or the iteration fails to converge within
// `max_iterations` sweeps.
PackingResult pack_triangulation(const PlanarGraph& tri, const std::vector<Vertex>& outer,
                                 const std::vector<double>& boundary_radii, double tol = 1e-8,
                                 int max_iterations = 100000);

// Angle sum at v implied by the radii alone (cyclic over the rotation).
// Equals 2 pi at interior vertices of a packed triangulation.
double angle_sum(const CirclePacking& p, Vertex v);

// Max over edges of | |c_u - c_v| - (r_u + r_v) |.
double tangency_error(const CirclePacking& p);

// Max over NON-adjacent vertex pairs of the overlap depth
// (r_u + r_v - |c_u - c_v|), or 0 if all interiors are disjoint.  O(n^2).
double packing_overlap(const CirclePacking& p);

// Similarity transform sending the root circle to the unit circle at the
// origin; tangencies and radius ratios are preserved.
CirclePacking normalize_at_root(const CirclePacking& p, Vertex root);

struct RingRatio {
  double max_ratio = 1.0;      // max over interior-interior tangent pairs
  int interior_max_degree = 0; // the D the Ring-Lemma constant depends on
};

// Ring-Lemma audit: radius ratios across edges whose endpoints are both
// interior (boundary circles excluded).
RingRatio ring_ratio_audit(const CirclePacking& p);

// Regions for vertex slicing (membership by circle center):
// closed disk |q - c| <= r ...
struct DiskRegion {
  Point center;
  double radius = 0.0;
};
// ... half-open annulus inner < |q - c| <= outer ...
struct AnnulusRegion {
  Point center;
  double inner = 0.0;
  double outer = 0.0;
};
// ... and the complement of a closed disk, |q - c| > r.
struct ComplementRegion {
  Point center;
  double radius = 0.0;
};

using Region = std::variant<DiskRegion, AnnulusRegion, ComplementRegion>;

bool region_contains(const Region& region, Point q);

// Vertices whose circle centers lie in the region.
std::vector<Vertex> vertices_in_region(const CirclePacking& p, const Region& region);

// Resistance profile across centered balls: consecutive[i] is
// Reff(inside B(center, radii[i]) <-> outside B(center, radii[i+1])) and
// cumulative[i] is Reff(inside B(center, radii[0]) <-> outside
// B(center, radii[i+1])), each +infinity when a side is empty.  The radii
// must be strictly increasing and positive; packing and network must share
// the graph.
struct AnnulusProfile {
  std::vector<double> consecutive;
  std::vector<double> cumulative;
};

AnnulusProfile annulus_resistance_profile(const CirclePacking& p, const Network& net,
                                          Point center, const std::vector<double>& radii);

}  // namespace pll

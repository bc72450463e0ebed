#pragma once

// Supported points of a finite planar point cloud.  A point w with
// isolation radius rho_w is (delta, s)-supported when removing the best
// possible disk of radius delta * rho_w still leaves at least s cloud
// points within distance 1/delta * rho_w of w.  The inner optimum is exact:
// a covering disk of fixed radius can always be slid until it is pinned by
// one or two points, so only point-centered disks and disks through point
// pairs need to be tested.

#include <vector>

#include "pll/packing.hpp"

namespace pll {

struct PointCloud {
  std::vector<Point> points;
  std::vector<double> isolation;  // rho_w = distance to the nearest other point
};

// Builds the cloud and caches isolation radii.  Requires at least two
// points, all distinct.
PointCloud make_point_cloud(std::vector<Point> points);

// Largest number of `points` covered by one closed disk of the given
// radius, maximized exactly over the canonical candidate set (disks
// centered at points, plus the two disks whose boundary passes through each
// pair of points closer than the diameter).  Coverage tests carry a 1e-9
// relative slack on the squared radius so that the construction points of a
// candidate disk are never lost to rounding.
int max_coverage(const std::vector<Point>& points, double radius);

struct SupportedResult {
  int count = 0;                 // number of supported points
  std::vector<int> witnesses;    // their indices, ascending
  std::vector<int> slack;        // per point: |S_w| - best coverage (>= s iff supported)
};

// Exact (delta, s)-supported census of the cloud.  Requires
// delta in (0, 1/2) and s >= 2.
SupportedResult supported_points(const PointCloud& cloud, double delta, int s);

}  // namespace pll

#include "pll/supported.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pll {

namespace {

// Relative slack on squared radii: keeps the two construction points of a
// pair-candidate disk covered despite rounding in the center coordinates.
constexpr double kCoverageSlack = 1e-9;

int covered_by(const std::vector<Point>& pts, Point p, double r2) {
  const double lim = r2 * (1.0 + kCoverageSlack);
  int k = 0;
  for (const Point& q : pts) {
    const double dx = q.x - p.x, dy = q.y - p.y;
    if (dx * dx + dy * dy <= lim) ++k;
  }
  return k;
}

}  // namespace

PointCloud make_point_cloud(std::vector<Point> points) {
  const int n = int(points.size());
  if (n < 2) throw std::invalid_argument("make_point_cloud: need at least two points");
  PointCloud cloud;
  cloud.isolation.assign(n, std::numeric_limits<double>::infinity());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double d = distance(points[i], points[j]);
      if (d == 0.0) throw std::invalid_argument("make_point_cloud: points must be distinct");
      cloud.isolation[i] = std::min(cloud.isolation[i], d);
      cloud.isolation[j] = std::min(cloud.isolation[j], d);
    }
  cloud.points = std::move(points);
  return cloud;
}

int max_coverage(const std::vector<Point>& points, double radius) {
  if (points.empty()) return 0;
  if (!(radius > 0.0)) throw std::invalid_argument("max_coverage: radius must be positive");
  const double r2 = radius * radius;
  int best = 1;  // a point-centered disk always covers its own point
  for (const Point& p : points) best = std::max(best, covered_by(points, p, r2));
  const int n = int(points.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Point a = points[i], b = points[j];
      const double dx = b.x - a.x, dy = b.y - a.y;
      const double d2 = dx * dx + dy * dy;
      if (d2 > 4.0 * r2 * (1.0 + kCoverageSlack)) continue;  // pair too far apart
      const double h = std::sqrt(std::max(0.0, r2 - 0.25 * d2));
      const Point mid{a.x + 0.5 * dx, a.y + 0.5 * dy};
      const double inv = 1.0 / std::sqrt(d2);
      const Point perp{-dy * inv, dx * inv};
      best = std::max(best, covered_by(points, {mid.x + h * perp.x, mid.y + h * perp.y}, r2));
      best = std::max(best, covered_by(points, {mid.x - h * perp.x, mid.y - h * perp.y}, r2));
    }
  return best;
}

SupportedResult supported_points(const PointCloud& cloud, double delta, int s) {
  if (!(delta > 0.0) || !(delta < 0.5))
    throw std::invalid_argument("supported_points: delta must lie in (0, 1/2)");
  if (s < 2) throw std::invalid_argument("supported_points: s must be at least 2");
  const int n = int(cloud.points.size());
  if (n < 2 || int(cloud.isolation.size()) != n)
    throw std::invalid_argument("supported_points: malformed cloud");

  SupportedResult result;
  result.slack.assign(n, 0);
  for (int w = 0; w < n; ++w) {
    const double rho = cloud.isolation[w];
    const double outer = rho / delta;
    const double outer2 = outer * outer;
    std::vector<Point> window;  // S_w = C intersected with the closed outer disk
    for (const Point& q : cloud.points) {
      const double dx = q.x - cloud.points[w].x, dy = q.y - cloud.points[w].y;
      if (dx * dx + dy * dy <= outer2) window.push_back(q);
    }
    const int cover = max_coverage(window, delta * rho);
    result.slack[w] = int(window.size()) - cover;
    if (result.slack[w] >= s) result.witnesses.push_back(w);
  }
  result.count = int(result.witnesses.size());
  return result;
}

}  // namespace pll

#pragma once

// Small numeric helpers shared by experiments and tests: least-squares line
// fits, Wilson score intervals for Bernoulli estimates, histogram distances.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace pll {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;  // coefficient of determination
};

inline LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("linear_fit: need at least two (x, y) pairs");
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  const double vxx = sxx - sx * sx / n;
  const double vxy = sxy - sx * sy / n;
  const double vyy = syy - sy * sy / n;
  if (vxx <= 0.0) throw std::invalid_argument("linear_fit: degenerate abscissa");
  LinearFit f;
  f.slope = vxy / vxx;
  f.intercept = (sy - f.slope * sx) / n;
  f.r2 = vyy > 0.0 ? (vxy * vxy) / (vxx * vyy) : 1.0;
  return f;
}

struct WilsonInterval {
  double center = 0.0;
  double half_width = 0.0;
  double lo() const { return center - half_width; }
  double hi() const { return center + half_width; }
};

// 95% Wilson score interval for k successes out of n trials.
inline WilsonInterval wilson_interval(std::uint64_t k, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("wilson_interval: zero trials");
  constexpr double z = 1.959963984540054;  // 97.5% normal quantile
  const double nn = double(n);
  const double p = double(k) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  WilsonInterval w;
  w.center = (p + z2 / (2.0 * nn)) / denom;
  w.half_width = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  return w;
}

// Total variation distance between two discrete distributions given as
// aligned probability vectors.
inline double tv_distance_vec(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("tv_distance_vec: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

}  // namespace pll

#pragma once

#include <cmath>
#include <vector>

#include "vkg/errors.hpp"

namespace vkg {

/// Uniform 1D grid including both end points.
class SpatialGrid1D {
 public:
  SpatialGrid1D(double x_min, double x_max, int n) : x_min_(x_min), x_max_(x_max), n_(n) {
    if (n < 2) throw ConfigError("grid needs at least two nodes");
    if (!(x_min < x_max)) throw ConfigError("grid requires x_min < x_max");
    dx_ = (x_max - x_min) / (n - 1);
  }

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  int size() const { return n_; }
  double dx() const { return dx_; }
  double x(int i) const { return x_min_ + i * dx_; }
  double length() const { return x_max_ - x_min_; }

  std::vector<double> nodes() const {
    std::vector<double> out(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] = x(i);
    return out;
  }

  /// Linear interpolation of nodal values; zero outside [x_min, x_max].
  double interpolate_linear(const std::vector<double>& values, double x) const {
    const double s = (x - x_min_) / dx_;
    if (s < 0.0 || s > n_ - 1) return 0.0;
    int i = static_cast<int>(std::floor(s));
    if (i >= n_ - 1) i = n_ - 2;
    const double th = s - i;
    return (1.0 - th) * values[static_cast<std::size_t>(i)] +
           th * values[static_cast<std::size_t>(i + 1)];
  }

  bool operator==(const SpatialGrid1D& o) const {
    return x_min_ == o.x_min_ && x_max_ == o.x_max_ && n_ == o.n_;
  }

 private:
  double x_min_;
  double x_max_;
  int n_;
  double dx_;
};

}  // namespace vkg

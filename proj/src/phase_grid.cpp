#include "vkg/phase_grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vkg {

PhaseGrid::PhaseGrid(SpatialGrid1D x_axis, SpatialGrid1D v_axis)
    : x_axis_(x_axis),
      v_axis_(v_axis),
      values_(static_cast<std::size_t>(x_axis.size()) * static_cast<std::size_t>(v_axis.size()),
              0.0) {}

PhaseGrid PhaseGrid::sample(const SpatialGrid1D& x_axis, const SpatialGrid1D& v_axis,
                            const InitialParticleData& data) {
  PhaseGrid f(x_axis, v_axis);
  for (int i = 0; i < f.nx(); ++i)
    for (int j = 0; j < f.nv(); ++j) f.at(i, j) = data.density(x_axis.x(i), v_axis.x(j));
  f.update_support(support_epsilon(data));
  return f;
}

void PhaseGrid::update_support(double threshold) {
  threshold_ = threshold;
  SupportBox b{nx(), -1, nv(), -1};
  for (int i = 0; i < nx(); ++i) {
    for (int j = 0; j < nv(); ++j) {
      if (std::abs(at(i, j)) > threshold) {
        b.ix_lo = std::min(b.ix_lo, i);
        b.ix_hi = std::max(b.ix_hi, i);
        b.iv_lo = std::min(b.iv_lo, j);
        b.iv_hi = std::max(b.iv_hi, j);
      }
    }
  }
  box_ = b.ix_hi < 0 ? SupportBox{} : b;
}

double PhaseGrid::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double PhaseGrid::l1_norm() const {
  double s = 0.0;
  for (int i = 0; i < nx(); ++i) {
    const double wx = (i == 0 || i == nx() - 1) ? 0.5 : 1.0;
    for (int j = 0; j < nv(); ++j) {
      const double wv = (j == 0 || j == nv() - 1) ? 0.5 : 1.0;
      s += wx * wv * std::abs(at(i, j));
    }
  }
  return s * x_axis_.dx() * v_axis_.dx();
}

void PhaseGrid::check_coverage(int margin, const char* context) const {
  if (box_.empty()) return;
  if (box_.ix_lo < margin || box_.ix_hi > nx() - 1 - margin || box_.iv_lo < margin ||
      box_.iv_hi > nv() - 1 - margin)
    throw DomainCoverageError(std::string(context) +
                              ": phase-space support reached the edge of the (x, v) grid");
}

std::vector<double> compute_rho(const PhaseGrid& f) {
  std::vector<double> rho(static_cast<std::size_t>(f.nx()), 0.0);
  const double dv = f.v_axis().dx();
  const int nv = f.nv();
  for (int i = 0; i < f.nx(); ++i) {
    double s = 0.5 * (f.at(i, 0) + f.at(i, nv - 1));
    for (int j = 1; j < nv - 1; ++j) s += f.at(i, j);
    rho[static_cast<std::size_t>(i)] = s * dv;
  }
  return rho;
}

double l1_norm(const SpatialGrid1D& grid, const std::vector<double>& values) {
  double s = 0.0;
  const auto n = values.size();
  for (std::size_t i = 0; i < n; ++i)
    s += (i == 0 || i + 1 == n ? 0.5 : 1.0) * std::abs(values[i]);
  return s * grid.dx();
}

SupportRadii measure_support(const PhaseGrid& f, double running_momentum) {
  SupportRadii r{0.0, running_momentum};
  const double thr = f.support_threshold();
  for (int i = 0; i < f.nx(); ++i) {
    for (int j = 0; j < f.nv(); ++j) {
      if (std::abs(f.at(i, j)) > thr) {
        r.spatial = std::max(r.spatial, std::abs(f.x_axis().x(i)));
        r.momentum = std::max(r.momentum, std::abs(f.v_axis().x(j)));
      }
    }
  }
  return r;
}

}  // namespace vkg

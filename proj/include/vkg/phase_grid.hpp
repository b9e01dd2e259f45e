#pragma once

#include <cstddef>
#include <vector>

#include "vkg/grid.hpp"
#include "vkg/profiles.hpp"

namespace vkg {

/// Node-index bounding box of the entries above the support threshold.
struct SupportBox {
  int ix_lo = 0;
  int ix_hi = -1;
  int iv_lo = 0;
  int iv_hi = -1;
  bool empty() const { return ix_lo > ix_hi; }
};

/// f(x, v) on a tensor grid, stored row-major with v fastest.
class PhaseGrid {
 public:
  PhaseGrid(SpatialGrid1D x_axis, SpatialGrid1D v_axis);

  /// Samples f̊ at the nodes.
  static PhaseGrid sample(const SpatialGrid1D& x_axis, const SpatialGrid1D& v_axis,
                          const InitialParticleData& data);

  const SpatialGrid1D& x_axis() const { return x_axis_; }
  const SpatialGrid1D& v_axis() const { return v_axis_; }
  int nx() const { return x_axis_.size(); }
  int nv() const { return v_axis_.size(); }

  double& at(int ix, int iv) { return values_[index(ix, iv)]; }
  double at(int ix, int iv) const { return values_[index(ix, iv)]; }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t index(int ix, int iv) const {
    return static_cast<std::size_t>(ix) * static_cast<std::size_t>(v_axis_.size()) +
           static_cast<std::size_t>(iv);
  }

  /// Recomputes the bounding box of entries with |f| > threshold.
  void update_support(double threshold);
  const SupportBox& support_box() const { return box_; }
  double support_threshold() const { return threshold_; }

  double sup_norm() const;
  /// ∫∫ |f| dx dv by the trapezoid rule
  double l1_norm() const;

  /// Throws DomainCoverageError if the support box is within `margin` nodes
  /// of the grid edge.
  void check_coverage(int margin, const char* context) const;

 private:
  SpatialGrid1D x_axis_;
  SpatialGrid1D v_axis_;
  std::vector<double> values_;
  SupportBox box_;
  double threshold_ = 0.0;
};

/// ρ(x) = ∫ f(x, v) dv by the trapezoid rule in v.
std::vector<double> compute_rho(const PhaseGrid& f);

/// ∫ |ρ| dx by the trapezoid rule.
double l1_norm(const SpatialGrid1D& grid, const std::vector<double>& values);

struct SupportRadii {
  /// max |x| over nodes with |f| > threshold
  double spatial = 0.0;
  /// running max over the trajectory of max |v| over such nodes
  double momentum = 0.0;
};

/// Tight support radii of f with the box threshold of `f`. `running_momentum`
/// carries the sup over earlier times.
SupportRadii measure_support(const PhaseGrid& f, double running_momentum = 0.0);

/// Default support threshold, 1e-14·‖f̊‖∞.
inline double support_epsilon(const InitialParticleData& data) { return 1e-14 * data.sup_norm; }

}  // namespace vkg

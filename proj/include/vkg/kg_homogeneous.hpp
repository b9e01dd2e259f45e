#pragma once

// Homogeneous Klein-Gordon evolution ∂ₜ²u - ∂ₓ²u + u = 0 by exact modal
// evolution on a periodic grid: each Fourier mode is multiplied by cos(ωt)
// and sin(ωt)/ω with ω = √(1+k²).

#include <complex>
#include <vector>

#include "vkg/grid.hpp"
#include "vkg/profiles.hpp"

namespace vkg {

struct FieldSnapshot {
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> ut;
  std::vector<double> ux;
  /// periodic images of the data may have reached the physical grid
  bool boundary_warning = false;
};

/// The physical grid embedded in a wider grid with the same spacing.
struct PaddedGrid {
  SpatialGrid1D grid;
  /// index of physical node 0 inside `grid`
  int offset = 0;
};

/// Extension of `grid` wide enough that, over [0, horizon], signals from the
/// data never wrap around a periodic extension (or reach a Dirichlet wall)
/// and come back onto the physical grid.
PaddedGrid pad_for_horizon(const SpatialGrid1D& grid, const InitialFieldData& data, double horizon);

class HomogeneousKG {
 public:
  /// Padded mode: evolution on a periodic extension sized by pad_for_horizon.
  HomogeneousKG(const SpatialGrid1D& grid, const InitialFieldData& data, double horizon);

  /// Periodic mode: the grid itself is one period, of length n·dx.
  static HomogeneousKG periodic(const SpatialGrid1D& grid, const InitialFieldData& data);

  FieldSnapshot evaluate(double t) const;

  /// ∫ (u_t² + u_x² + u²) dx over one full period (Parseval).
  double energy(double t) const;

  const SpatialGrid1D& physical_grid() const { return grid_; }
  const PaddedGrid& padded() const { return padded_; }

  /// Latest time at which no contamination from periodic images is possible.
  double safe_horizon() const { return safe_horizon_; }

 private:
  HomogeneousKG(const SpatialGrid1D& grid, const PaddedGrid& padded, const InitialFieldData& data,
                bool periodic);
  std::vector<std::complex<double>> modes_at(double t, int which) const;
  std::vector<double> inverse(const std::vector<std::complex<double>>& modes) const;

  SpatialGrid1D grid_;
  PaddedGrid padded_;
  int n_ext_;
  double period_;
  std::vector<double> k_;
  std::vector<std::complex<double>> hat_u1_;
  std::vector<std::complex<double>> hat_u2_;
  double safe_horizon_;
};

/// u_hom, ∂ₜu_hom and ∂ₓu_hom at time t on the grid nodes.
FieldSnapshot solve_homogeneous(const SpatialGrid1D& grid, const InitialFieldData& data, double t);

}  // namespace vkg

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vkg/grid.hpp"

namespace vkg {

/// Index range [lo, hi] of the nonzero entries of a slice; empty if lo > hi.
struct IndexRange {
  int lo = 0;
  int hi = -1;
  bool empty() const { return lo > hi; }
};

IndexRange nonzero_range(std::span<const double> values);

/// ρ(s, ·) sampled at s = 0, dt, 2dt, ... on one spatial grid, plus the most
/// recent u and ∂ₜu. Append-only: one writer adds slices, readers evaluate
/// retarded integrals. Appends must not overlap with reads.
class FieldHistory {
 public:
  FieldHistory(SpatialGrid1D grid, double dt);

  const SpatialGrid1D& grid() const { return grid_; }
  double dt() const { return dt_; }
  std::size_t size() const { return rho_.size(); }
  double time(std::size_t i) const { return static_cast<double>(i) * dt_; }

  /// Retarded integrals never need ρ at the evaluation time itself (the cone
  /// has zero width there), so the history covers t ≤ size()·dt.
  double coverage_limit() const { return static_cast<double>(rho_.size()) * dt_; }

  /// Appends ρ at time size()·dt. Throws ConfigError on a size mismatch and
  /// DomainCoverageError if ρ does not vanish at both grid ends.
  void append(std::vector<double> rho);

  const std::vector<double>& rho(std::size_t i) const { return rho_[i]; }
  IndexRange support(std::size_t i) const { return support_[i]; }

  std::vector<double> u_current;
  std::vector<double> ut_current;

 private:
  SpatialGrid1D grid_;
  double dt_;
  std::vector<std::vector<double>> rho_;
  std::vector<IndexRange> support_;
};

}  // namespace vkg

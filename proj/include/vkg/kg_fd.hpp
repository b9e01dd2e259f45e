#pragma once

// Leapfrog (second-order central in t and x) solver for
//   ∂ₜ²u - ∂ₓ²u + u = -ρ,
// kept independent of the retarded-kernel representation so that the two can
// cross-validate each other.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "vkg/grid.hpp"
#include "vkg/profiles.hpp"

namespace vkg {

enum class FdBoundary { dirichlet, periodic };

class LeapfrogKG {
 public:
  /// Throws ConfigError if dt > dx (CFL).
  LeapfrogKG(const SpatialGrid1D& grid, const InitialFieldData& data, double dt,
             FdBoundary boundary = FdBoundary::dirichlet);

  /// Advances from t to t + dt using ρ(t) on the grid.
  void step(std::span<const double> rho);

  double time() const { return static_cast<double>(steps_) * dt_; }
  std::size_t steps() const { return steps_; }
  const std::vector<double>& u() const { return u_; }
  const std::vector<double>& u_previous() const { return u_prev_; }
  /// central second-order ∂ₓu
  std::vector<double> ux() const;
  /// backward second-order ∂ₜu (first order on the first step)
  std::vector<double> ut() const;
  const SpatialGrid1D& grid() const { return grid_; }
  double dt() const { return dt_; }

 private:
  double laplacian(const std::vector<double>& u, int i) const;

  SpatialGrid1D grid_;
  double dt_;
  FdBoundary boundary_;
  std::size_t steps_ = 0;
  std::vector<double> u_;
  std::vector<double> u_prev_;
  std::vector<double> u_prev2_;
  std::vector<double> u2_;
};

struct FdTrajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> u;
};

/// ρ at t = step·dt sampled on the solver grid.
using RhoProvider = std::function<std::vector<double>(std::size_t step, double t)>;

/// Runs the leapfrog scheme to T (dt shrunk so that T is a whole number of
/// steps) and stores u every `store_every` steps plus the final state.
FdTrajectory fd_reference_solve(const SpatialGrid1D& grid, const InitialFieldData& data,
                                const RhoProvider& rho, double T, double dt,
                                FdBoundary boundary = FdBoundary::dirichlet,
                                std::size_t store_every = 1);

}  // namespace vkg

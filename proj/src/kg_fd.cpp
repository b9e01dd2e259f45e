#include "vkg/kg_fd.hpp"

#include <cmath>
#include <string>

namespace vkg {

LeapfrogKG::LeapfrogKG(const SpatialGrid1D& grid, const InitialFieldData& data, double dt,
                       FdBoundary boundary)
    : grid_(grid), dt_(dt), boundary_(boundary) {
  if (!(dt > 0.0)) throw ConfigError("leapfrog time step must be positive");
  if (dt > grid.dx() * (1.0 + 1e-12))
    throw ConfigError("CFL violation: dt=" + std::to_string(dt) + " exceeds dx=" +
                      std::to_string(grid.dx()));
  const auto n = static_cast<std::size_t>(grid.size());
  u_.resize(n);
  u2_.resize(n);
  for (int i = 0; i < grid.size(); ++i) {
    u_[static_cast<std::size_t>(i)] = data.u1(grid.x(i));
    u2_[static_cast<std::size_t>(i)] = data.u2(grid.x(i));
  }
  if (boundary_ == FdBoundary::dirichlet) {
    u_.front() = 0.0;
    u_.back() = 0.0;
  }
}

double LeapfrogKG::laplacian(const std::vector<double>& u, int i) const {
  const int n = grid_.size();
  const double dx2 = grid_.dx() * grid_.dx();
  int im = i - 1;
  int ip = i + 1;
  if (boundary_ == FdBoundary::periodic) {
    im = (im + n) % n;
    ip = ip % n;
  }
  return (u[static_cast<std::size_t>(ip)] - 2.0 * u[static_cast<std::size_t>(i)] +
          u[static_cast<std::size_t>(im)]) /
         dx2;
}

void LeapfrogKG::step(std::span<const double> rho) {
  const int n = grid_.size();
  if (static_cast<int>(rho.size()) != n) throw ConfigError("density size does not match FD grid");
  std::vector<double> next(static_cast<std::size_t>(n), 0.0);
  const int first = boundary_ == FdBoundary::dirichlet ? 1 : 0;
  const int last = boundary_ == FdBoundary::dirichlet ? n - 2 : n - 1;
  const double dt2 = dt_ * dt_;
  for (int i = first; i <= last; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double acc = laplacian(u_, i) - u_[k] - rho[k];
    if (steps_ == 0)
      next[k] = u_[k] + dt_ * u2_[k] + 0.5 * dt2 * acc;
    else
      next[k] = 2.0 * u_[k] - u_prev_[k] + dt2 * acc;
  }
  u_prev2_ = std::move(u_prev_);
  u_prev_ = std::move(u_);
  u_ = std::move(next);
  ++steps_;
}

std::vector<double> LeapfrogKG::ux() const {
  const int n = grid_.size();
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  const double inv = 0.5 / grid_.dx();
  for (int i = 0; i < n; ++i) {
    int im = i - 1;
    int ip = i + 1;
    if (boundary_ == FdBoundary::periodic) {
      im = (im + n) % n;
      ip %= n;
    } else if (i == 0 || i == n - 1) {
      continue;
    }
    out[static_cast<std::size_t>(i)] =
        (u_[static_cast<std::size_t>(ip)] - u_[static_cast<std::size_t>(im)]) * inv;
  }
  return out;
}

std::vector<double> LeapfrogKG::ut() const {
  std::vector<double> out(u_.size(), 0.0);
  if (steps_ == 0) return u2_;
  for (std::size_t i = 0; i < u_.size(); ++i) {
    if (steps_ == 1)
      out[i] = (u_[i] - u_prev_[i]) / dt_;
    else
      out[i] = (3.0 * u_[i] - 4.0 * u_prev_[i] + u_prev2_[i]) / (2.0 * dt_);
  }
  return out;
}

FdTrajectory fd_reference_solve(const SpatialGrid1D& grid, const InitialFieldData& data,
                                const RhoProvider& rho, double T, double dt, FdBoundary boundary,
                                std::size_t store_every) {
  if (T < 0.0) throw ConfigError("horizon must be non-negative");
  if (!(dt > 0.0)) throw ConfigError("time step must be positive");
  if (store_every == 0) store_every = 1;
  const auto steps = static_cast<std::size_t>(std::ceil(T / dt - 1e-9));
  const double h = steps > 0 ? T / static_cast<double>(steps) : dt;
  LeapfrogKG solver(grid, data, h, boundary);
  FdTrajectory traj;
  traj.times.push_back(0.0);
  traj.u.push_back(solver.u());
  for (std::size_t s = 0; s < steps; ++s) {
    const auto r = rho(s, static_cast<double>(s) * h);
    solver.step(r);
    if ((s + 1) % store_every == 0 || s + 1 == steps) {
      traj.times.push_back(static_cast<double>(s + 1) * h);
      traj.u.push_back(solver.u());
    }
  }
  return traj;
}

}  // namespace vkg

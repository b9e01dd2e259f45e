#pragma once

// Semi-Lagrangian transport for ∂ₜf + v̂ ∂ₓf - ∂ₓu ∂ᵥf = 0 in one dimension.
//
// Each step traces the characteristic through every node back over one step
// with a single RK4 step. Two transports share that backtrace:
//   * semi_lagrangian_step interpolates f itself at the foot (tensor cubic
//     Lagrange, negative undershoots clipped and counted);
//   * VlasovState carries the backward characteristic map Z(0, t, z) and sets
//     f(t, z) = f̊(Z(0, t, z)). Interpolating the smooth map instead of f keeps
//     f ≥ 0, ‖f‖∞ ≤ ‖f̊‖∞ and the support of f equal to the transported
//     support of f̊, which plain interpolation smears by several cells.

#include <functional>
#include <span>
#include <vector>

#include "vkg/kinematics.hpp"
#include "vkg/phase_grid.hpp"

namespace vkg {

/// ∂ₓu(t, x) as a plain callable.
using ForceFn = std::function<double(double t, double x)>;

/// ∂ₓu sampled on a spatial grid at the two ends of one step, linear in time,
/// cubic Lagrange in x, zero outside the grid.
struct GridForce {
  const SpatialGrid1D* grid = nullptr;
  std::span<const double> at_start;
  std::span<const double> at_end;
  double t_start = 0.0;
  double t_end = 0.0;

  double operator()(double t, double x) const;
};

ForceField<1> to_force_field(const ForceFn& force);

/// Four-point Lagrange weights for nodes 0..3 at position p (p ∈ [1,2] is
/// the centred case).
void cubic_weights(double p, double w[4]);

/// First stencil node and weights for a clamped four-point stencil at grid
/// coordinate s = (x - x_min)/dx.
int cubic_stencil(double s, int n, double w[4]);

struct StepOptions {
  /// clip negative undershoots to zero and account for the removed mass
  bool clip = true;
  /// throw DomainCoverageError when the support is within two nodes of the
  /// grid edge before or after the step
  bool check_coverage = true;
};

struct StepStats {
  /// mass removed by clipping, ∫∫ max(0, -f̃) dx dv
  double clipped_mass = 0.0;
};

/// One step t → t + dt interpolating f at the characteristic feet. dt < 0
/// steps backward.
PhaseGrid semi_lagrangian_step(const PhaseGrid& f, const ForceFn& force, double t, double dt,
                               StepOptions opts = {}, StepStats* stats = nullptr);
PhaseGrid semi_lagrangian_step(const PhaseGrid& f, const GridForce& force, double t, double dt,
                               StepOptions opts = {}, StepStats* stats = nullptr);

/// Serial reference for semi_lagrangian_step: per-node advance_characteristics
/// followed by a separate interpolation.
PhaseGrid semi_lagrangian_step_reference(const PhaseGrid& f, const ForceField<1>& force, double t,
                                         double dt, StepOptions opts = {});

/// Tensor cubic interpolation of nodal values at (x, v). Near the edges the
/// stencil is shifted inward, so points just outside the grid extrapolate.
double interpolate_phase(const SpatialGrid1D& x_axis, const SpatialGrid1D& v_axis,
                         const std::vector<double>& values, double x, double v);
inline double interpolate_phase(const PhaseGrid& f, double x, double v) {
  return interpolate_phase(f.x_axis(), f.v_axis(), f.values(), x, v);
}

/// Phase-space density represented through the backward characteristic map.
class VlasovState {
 public:
  VlasovState(InitialParticleData data, const SpatialGrid1D& x_axis, const SpatialGrid1D& v_axis);

  const PhaseGrid& f() const { return f_; }
  double time() const { return t_; }
  const InitialParticleData& initial_data() const { return data_; }
  /// Z(0,t,z) - z at every node, components x and v.
  const std::vector<double>& map_dx() const { return map_x_; }
  const std::vector<double>& map_dv() const { return map_v_; }

  /// Advances by dt (negative dt runs backward). Throws DomainCoverageError
  /// when the support comes within two nodes of the grid edge.
  void step(const GridForce& force, double dt);
  void step(const ForceFn& force, double dt);

 private:
  template <class Force>
  void step_impl(const Force& force, double dt);

  InitialParticleData data_;
  PhaseGrid f_;
  std::vector<double> map_x_;
  std::vector<double> map_v_;
  double t_ = 0.0;
};

/// ∂ₜf + v̂ ∂ₓf - ∂ₓu ∂ᵥf = g, solved as f(t,z) = f̊(Z(0,t,z)) + ∫₀ᵗ g(s, Z(s,t,z)) ds
/// with the source integral accumulated by the trapezoid rule along each
/// characteristic. Returns f at t = 0, dt, ..., T.
using SourceFn = std::function<double(double t, double x, double v)>;
std::vector<PhaseGrid> solve_inhomogeneous_vlasov(const InitialParticleData& data,
                                                  const SourceFn& source, const ForceFn& force,
                                                  const SpatialGrid1D& x_axis,
                                                  const SpatialGrid1D& v_axis, double T, double dt);

}  // namespace vkg

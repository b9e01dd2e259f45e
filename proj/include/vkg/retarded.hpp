#pragma once

// Inhomogeneous 1D Klein-Gordon field with vanishing data,
//   u_inh(t,x) = -1/2 ∫₀ᵗ ∫_{|x-y|≤t-s} ρ(s,y) J₀(ξ) dy ds,  ξ = √((t-s)² - (x-y)²),
// and its derivatives
//   ∂ₓu_inh = -1/2 ∫₀ᵗ (ρ(s,x+(t-s)) - ρ(s,x-(t-s))) ds - 1/2 ∫∫ ρ J₁(ξ)/ξ (x-y) dy ds
//   ∂ₜu_inh = -1/2 ∫₀ᵗ (ρ(s,x+(t-s)) + ρ(s,x-(t-s))) ds + 1/2 ∫∫ ρ J₁(ξ)/ξ (t-s) dy ds.
//
// Quadrature: trapezoid in s over the stored slices (the s = t end has zero
// weight), trapezoid in y over the nodes inside the cone with partial end
// cells whose end values are linear interpolants of ρ.
//
// Two implementations share that rule: a serial point evaluator that calls
// the Bessel functions directly (any t, x), and RetardedField1D, which
// evaluates all grid nodes at t = n·dt from precomputed lag stencils.

#include <cstddef>
#include <vector>

#include "vkg/field_history.hpp"

namespace vkg {

struct RetardedValues {
  double u = 0.0;
  double ux = 0.0;
  double ut = 0.0;
};

/// Serial reference evaluation at an arbitrary point. Throws
/// DomainCoverageError if t exceeds hist.coverage_limit(), t < 0, or x lies
/// outside the history grid.
RetardedValues retarded_point_reference(const FieldHistory& hist, double t, double x);

double u_inhomogeneous(const FieldHistory& hist, double t, double x);
double dx_u_inhomogeneous(const FieldHistory& hist, double t, double x);
double dt_u_inhomogeneous(const FieldHistory& hist, double t, double x);

struct RetardedGridValues {
  std::vector<double> u;
  std::vector<double> ux;
  std::vector<double> ut;
};

/// Grid-node evaluator. For node x_i and lag m (τ = m·dt) the y-quadrature
/// weights, Bessel factors and boundary-trace interpolation weights depend
/// only on (m, j = offset), so they are tabulated once per lag.
class RetardedField1D {
 public:
  enum Quantity : unsigned { kU = 1u, kUx = 2u, kUt = 4u, kAll = 7u };

  RetardedField1D(const SpatialGrid1D& grid, double dt);

  /// Values at every grid node at t = n·dt using slices 0..n-1 of `hist`.
  /// Nodes are distributed over OpenMP threads; each node's sum runs in a
  /// fixed order so results do not depend on the thread count.
  RetardedGridValues evaluate(const FieldHistory& hist, std::size_t n, unsigned which = kAll);

  /// Stencil half-width (offsets -w..w) of lag m.
  int half_width(std::size_t m);

 private:
  struct LagStencil {
    int half = 0;
    std::vector<double> wu;
    std::vector<double> wx;
    std::vector<double> wt;
  };
  const LagStencil& stencil(std::size_t m);
  LagStencil build(std::size_t m) const;

  SpatialGrid1D grid_;
  double dt_;
  std::vector<LagStencil> lags_;
};

}  // namespace vkg

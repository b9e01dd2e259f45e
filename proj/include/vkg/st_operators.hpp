#pragma once

// Characteristic derivative S = ∂ₜ + v̂·∂ₓ and cone-tangential derivatives
// T_j = -ω_j ∂ₜ + ∂_j, and the decomposition of ∂ₜ, ∂ₓ in terms of them:
//   ∂_k = ω_k/(1+ω·v̂) S + Σ_j (δ_jk - ω_k v̂_j/(1+ω·v̂)) T_j
//   ∂ₜ  = (S - v̂·T)/(1+ω·v̂)

#include <array>
#include <functional>

#include "vkg/kernels3d.hpp"

namespace vkg {

using SpaceTimeFunction = std::function<double(double t, const Vec3& x)>;

struct SpaceTimePoint {
  double t = 0.0;
  Vec3 x{};
};

/// Coefficients of the decomposition. Row k ∈ {0,1,2,kTime}; column 0 is the
/// S coefficient, columns 1..3 the T_j coefficients.
std::array<std::array<double, 4>, 4> st_coefficients(const Vec3& v, const Vec3& omega);

struct StDerivatives {
  double s = 0.0;
  Vec3 t{};
  /// ∂₀, ∂₁, ∂₂, ∂ₜ by direct central differences
  std::array<double, 4> direct{};
  /// the same derivatives reassembled from S and T
  std::array<double, 4> decomposed{};
};

/// Central-difference S g, T_j g and the direct derivatives of g at `p`.
StDerivatives st_derivatives(const SpaceTimeFunction& g, const Vec3& v, const Vec3& omega,
                             const SpaceTimePoint& p, double h);

/// max_k |direct_k - decomposed_k| with all derivatives formed by central
/// differences of step h. O(h²) for smooth g.
double st_decomposition_residual(const SpaceTimeFunction& g, const Vec3& v, const Vec3& omega,
                                 const SpaceTimePoint& p, double h);

}  // namespace vkg

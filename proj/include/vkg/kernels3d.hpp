#pragma once

// Kernels of the first- and second-order derivative representations of the
// 3D Klein-Gordon field, evaluated pointwise at (ω, v) with |ω| = 1.

#include <array>

#include "vkg/kinematics.hpp"

namespace vkg {

using Vec3 = Vec<3>;

/// Component index for kernels: 0, 1, 2 are spatial axes, kTime is ∂ₜ.
inline constexpr int kTime = 3;

class KernelQuery {
 public:
  /// Throws std::invalid_argument if ||ω| - 1| > 1e-12 or any entry is non-finite.
  KernelQuery(const Vec3& omega, const Vec3& v);

  const Vec3& omega() const { return omega_; }
  const Vec3& v() const { return v_; }
  const Vec3& vhat() const { return vhat_; }
  /// 1 + |v|²
  double gamma_sq() const { return gamma_sq_; }
  /// 1 + ω·v̂, always positive
  double denom() const { return denom_; }
  double omega_dot_vhat() const { return denom_ - 1.0; }
  double vhat_sq() const { return vhat_sq_; }

 private:
  Vec3 omega_;
  Vec3 v_;
  Vec3 vhat_;
  double gamma_sq_;
  double vhat_sq_;
  double denom_;
};

/// a^k = -v̂_k/(1+ω·v̂) - ω_k/((1+|v|²)(1+ω·v̂)²), k ∈ {0,1,2}
double kernel_a_spatial(int k, const KernelQuery& q);

/// a^t = (|v̂|² + ω·v̂)/(1+ω·v̂)²
double kernel_a_time(const KernelQuery& q);

/// The four terms a^{kℓ}_1..4 of the spatial-spatial second-order kernel.
std::array<double, 4> kernel_a_second_parts(int k, int l, const KernelQuery& q);

/// Second-order TT kernel a^{kℓ} for k, ℓ ∈ {0,1,2,kTime}. Mixed
/// time-space kernels are symmetric: a^{kt} = a^{tk}.
double kernel_a_second(int k, int l, const KernelQuery& q);

}  // namespace vkg

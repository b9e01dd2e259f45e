#include "vkg/kernels3d.hpp"

#include <cmath>
#include <stdexcept>

namespace vkg {

namespace {

void check_axis(int k, bool allow_time) {
  if (k < 0 || k > 3 || (!allow_time && k == kTime))
    throw std::invalid_argument("kernel: component index out of range");
}

double delta(int k, int l) { return k == l ? 1.0 : 0.0; }

}  // namespace

KernelQuery::KernelQuery(const Vec3& omega, const Vec3& v) : omega_(omega), v_(v) {
  for (int i = 0; i < 3; ++i)
    if (!std::isfinite(omega[i]) || !std::isfinite(v[i]))
      throw std::invalid_argument("KernelQuery: non-finite input");
  if (std::abs(norm(omega) - 1.0) > 1e-12)
    throw std::invalid_argument("KernelQuery: omega is not a unit vector");
  gamma_sq_ = 1.0 + dot(v, v);
  vhat_ = hat_v(v);
  vhat_sq_ = dot(vhat_, vhat_);
  denom_ = 1.0 + dot(omega_, vhat_);
}

double kernel_a_spatial(int k, const KernelQuery& q) {
  check_axis(k, false);
  const double d = q.denom();
  return -q.vhat()[k] / d - q.omega()[k] / (q.gamma_sq() * d * d);
}

double kernel_a_time(const KernelQuery& q) {
  const double d = q.denom();
  return (q.vhat_sq() + q.omega_dot_vhat()) / (d * d);
}

std::array<double, 4> kernel_a_second_parts(int k, int l, const KernelQuery& q) {
  check_axis(k, false);
  check_axis(l, false);
  const auto& w = q.omega();
  const auto& vh = q.vhat();
  const double g2 = q.gamma_sq();
  const double d = q.denom();
  const double d2 = d * d;
  return {-3.0 * (w[l] * vh[k] + w[k] * vh[l]) / (g2 * d2 * d),
          -3.0 * w[k] * w[l] / (g2 * g2 * d2 * d2),
          -2.0 * vh[k] * vh[l] / d2,
          delta(k, l) / (g2 * d2)};
}

double kernel_a_second(int k, int l, const KernelQuery& q) {
  check_axis(k, true);
  check_axis(l, true);
  const double d = q.denom();
  const double d3 = d * d * d;
  const double w2 = q.vhat_sq();
  // With 1 - |v̂|² = 1/(1+|v|²) the numerators are rewritten in powers of
  // d = 1 + ω·v̂. The displayed forms lose about log10(1+|v|²)² digits to
  // cancellation when ω ≈ -v̂/|v̂|; these are algebraically identical.
  const double g2 = q.gamma_sq();
  if (k == kTime && l == kTime) {
    // 3|v̂|⁴ - (ω·v̂)²|v̂|² - |v̂|² + 3(ω·v̂)² + 4(ω·v̂)|v̂|²
    //   = 3/g2² - 6d/g2 + (3 - |v̂|²)d²
    return 3.0 / (g2 * g2 * d3 * d) - 6.0 / (g2 * d3) + (3.0 - w2) / (d * d);
  }
  if (k == kTime || l == kTime) {
    const int j = k == kTime ? l : k;
    const double vj = q.vhat()[j];
    const double s = d - 1.0 / g2;  // ω·v̂ + |v̂|²
    return 2.0 * vj * s / d3 + 3.0 * q.omega()[j] * s / (g2 * d3 * d) - vj / (g2 * d3);
  }
  const auto p = kernel_a_second_parts(k, l, q);
  return p[0] + p[1] + p[2] + p[3];
}

}  // namespace vkg

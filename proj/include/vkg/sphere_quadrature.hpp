#pragma once

#include <functional>
#include <span>
#include <vector>

#include "vkg/kernels3d.hpp"

namespace vkg {

struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]. Rules are cached and shared.
const GaussLegendreRule& gauss_legendre(int n);

struct SphereNode {
  Vec3 omega;
  double weight;
};

/// Product rule on the unit sphere: `order` Gauss-Legendre nodes in the polar
/// variable times 2·order trapezoid nodes in azimuth.
///
/// The polar axis is aligned with v̂ and the polar variable c = ω·v̂/|v̂| is
/// graded through y = log(1 + |v̂| c), under which (1+ω·v̂)^(-p) becomes
/// e^(-p y). Kernels built from such denominators are then entire in y and
/// the rule converges spectrally even as |v̂| → 1. For v = 0 the rule is
/// plain Gauss-Legendre in cos θ.
class SphereQuadrature {
 public:
  static constexpr int kMinOrder = 4;
  static constexpr int kDefaultOrder = 64;

  /// Throws std::invalid_argument if order < kMinOrder.
  SphereQuadrature(const Vec3& v, int order);

  std::span<const SphereNode> nodes() const { return nodes_; }
  int order() const { return order_; }

  /// ∫_{|ω|=1} f(ω) dω with compensated summation.
  double integrate(const std::function<double(const Vec3&)>& f) const;

 private:
  int order_;
  std::vector<SphereNode> nodes_;
};

/// Integral (not normalised by 4π) of `kernel` over the unit sphere using the
/// rule adapted to momentum v. kernel ≡ 1 gives 4π.
double sphere_average(const std::function<double(const Vec3&)>& kernel, const Vec3& v,
                      int order = SphereQuadrature::kDefaultOrder);

}  // namespace vkg

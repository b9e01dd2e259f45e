#include "vkg/sphere_quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace vkg {

namespace {

GaussLegendreRule build_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = z;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    double p0 = 1.0;
    double p1 = z;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -z;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

// Orthonormal frame (e1, e2, e3) with e3 = axis.
void frame(const Vec3& axis, Vec3& e1, Vec3& e2) {
  const Vec3 a = std::abs(axis[0]) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  e1 = {axis[1] * a[2] - axis[2] * a[1], axis[2] * a[0] - axis[0] * a[2],
        axis[0] * a[1] - axis[1] * a[0]};
  const double n1 = norm(e1);
  for (auto& c : e1) c /= n1;
  e2 = {axis[1] * e1[2] - axis[2] * e1[1], axis[2] * e1[0] - axis[0] * e1[2],
        axis[0] * e1[1] - axis[1] * e1[0]};
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussLegendreRule>(build_rule(n));
  return *slot;
}

SphereQuadrature::SphereQuadrature(const Vec3& v, int order) : order_(order) {
  if (order < kMinOrder)
    throw std::invalid_argument("sphere quadrature order " + std::to_string(order) +
                                " is below the minimum " + std::to_string(kMinOrder));
  const auto& gl = gauss_legendre(order);
  const double vn = norm(v);
  const double w = vn / std::sqrt(1.0 + vn * vn);
  Vec3 e3{0.0, 0.0, 1.0};
  if (vn > 0.0) e3 = {v[0] / vn, v[1] / vn, v[2] / vn};
  Vec3 e1;
  Vec3 e2;
  frame(e3, e1, e2);

  const int n_phi = 2 * order;
  const double dphi = 2.0 * std::numbers::pi / n_phi;
  nodes_.reserve(static_cast<std::size_t>(order * n_phi));

  const bool graded = w > 1e-8;
  const double lo = graded ? std::log1p(-w) : -1.0;
  const double hi = graded ? std::log1p(w) : 1.0;
  const double half = 0.5 * (hi - lo);
  for (int i = 0; i < order; ++i) {
    const double xi = gl.nodes[static_cast<std::size_t>(i)];
    double one_plus_c;
    double one_minus_c;
    double wc;
    if (graded) {
      // Offsets from both ends are formed directly to keep 1 ± c accurate.
      const double from_lo = half * (1.0 + xi);
      const double from_hi = half * (1.0 - xi);
      const double y = lo + from_lo;
      one_plus_c = std::exp(lo) * std::expm1(from_lo) / w;
      one_minus_c = std::exp(y) * std::expm1(from_hi) / w;
      wc = half * gl.weights[static_cast<std::size_t>(i)] * std::exp(y) / w;
    } else {
      one_plus_c = 1.0 + xi;
      one_minus_c = 1.0 - xi;
      wc = gl.weights[static_cast<std::size_t>(i)];
    }
    const double c = 0.5 * (one_plus_c - one_minus_c);
    const double s = std::sqrt(std::max(0.0, one_plus_c * one_minus_c));
    for (int j = 0; j < n_phi; ++j) {
      const double phi = j * dphi;
      const double cp = std::cos(phi);
      const double sp = std::sin(phi);
      Vec3 om;
      for (int k = 0; k < 3; ++k) om[k] = c * e3[k] + s * (cp * e1[k] + sp * e2[k]);
      nodes_.push_back({om, wc * dphi});
    }
  }
}

double SphereQuadrature::integrate(const std::function<double(const Vec3&)>& f) const {
  double sum = 0.0;
  double comp = 0.0;
  for (const auto& node : nodes_) {
    const double term = node.weight * f(node.omega);
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

double sphere_average(const std::function<double(const Vec3&)>& kernel, const Vec3& v, int order) {
  return SphereQuadrature(v, order).integrate(kernel);
}

}  // namespace vkg

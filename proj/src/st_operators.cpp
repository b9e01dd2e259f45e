#include "vkg/st_operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vkg {

std::array<std::array<double, 4>, 4> st_coefficients(const Vec3& v, const Vec3& omega) {
  const KernelQuery q(omega, v);
  const double d = q.denom();
  const auto& vh = q.vhat();
  std::array<std::array<double, 4>, 4> c{};
  for (int k = 0; k < 3; ++k) {
    c[k][0] = omega[k] / d;
    for (int j = 0; j < 3; ++j) c[k][1 + j] = (j == k ? 1.0 : 0.0) - omega[k] * vh[j] / d;
  }
  c[kTime][0] = 1.0 / d;
  for (int j = 0; j < 3; ++j) c[kTime][1 + j] = -vh[j] / d;
  return c;
}

namespace {

// Central difference of g along the space-time direction (dt, dx).
double directional(const SpaceTimeFunction& g, const SpaceTimePoint& p, double dt, const Vec3& dx,
                   double h) {
  Vec3 xp = p.x;
  Vec3 xm = p.x;
  for (int i = 0; i < 3; ++i) {
    xp[i] += h * dx[i];
    xm[i] -= h * dx[i];
  }
  return (g(p.t + h * dt, xp) - g(p.t - h * dt, xm)) / (2.0 * h);
}

}  // namespace

StDerivatives st_derivatives(const SpaceTimeFunction& g, const Vec3& v, const Vec3& omega,
                             const SpaceTimePoint& p, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("st_derivatives: h must be positive");
  const Vec3 vh = hat_v(v);
  StDerivatives out;
  out.s = directional(g, p, 1.0, vh, h);
  for (int j = 0; j < 3; ++j) {
    Vec3 e{};
    e[j] = 1.0;
    out.t[j] = directional(g, p, -omega[j], e, h);
    out.direct[j] = directional(g, p, 0.0, e, h);
  }
  out.direct[kTime] = directional(g, p, 1.0, Vec3{}, h);

  const auto c = st_coefficients(v, omega);
  for (int k = 0; k < 4; ++k) {
    double acc = c[k][0] * out.s;
    for (int j = 0; j < 3; ++j) acc += c[k][1 + j] * out.t[j];
    out.decomposed[k] = acc;
  }
  return out;
}

double st_decomposition_residual(const SpaceTimeFunction& g, const Vec3& v, const Vec3& omega,
                                 const SpaceTimePoint& p, double h) {
  const auto d = st_derivatives(g, v, omega, p, h);
  double worst = 0.0;
  for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(d.direct[k] - d.decomposed[k]));
  return worst;
}

}  // namespace vkg

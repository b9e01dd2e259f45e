#pragma once

// Relativistic velocity map and the characteristic flow
//   dx/ds = v̂(v),   dv/ds = -∂ₓu(s, x)
// integrated with classical fixed-step RK4, optionally together with the
// variational matrix ∂_z Z.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace vkg {

template <std::size_t D>
using Vec = std::array<double, D>;

template <std::size_t D>
using Mat = std::array<std::array<double, D>, D>;

template <std::size_t D>
constexpr Mat<D> identity_matrix() {
  Mat<D> m{};
  for (std::size_t i = 0; i < D; ++i) m[i][i] = 1.0;
  return m;
}

template <std::size_t D>
inline double dot(const Vec<D>& a, const Vec<D>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < D; ++i) s += a[i] * b[i];
  return s;
}

template <std::size_t D>
inline double norm(const Vec<D>& a) {
  return std::sqrt(dot(a, a));
}

/// Lorentz factor √(1+|v|²).
template <std::size_t D>
inline double lorentz_factor(const Vec<D>& v) {
  return std::sqrt(1.0 + dot(v, v));
}

/// Relativistic velocity v̂ = v/√(1+|v|²). |v̂| < 1 for every finite v.
template <std::size_t D>
inline Vec<D> hat_v(const Vec<D>& v) {
  const double g = lorentz_factor(v);
  Vec<D> r;
  for (std::size_t i = 0; i < D; ++i) r[i] = v[i] / g;
  return r;
}

inline double hat_v(double v) { return v / std::sqrt(1.0 + v * v); }

/// ∂v̂/∂v = (I - v̂ v̂ᵀ)/√(1+|v|²); symmetric positive definite.
template <std::size_t D>
inline Mat<D> hat_v_jacobian(const Vec<D>& v) {
  const double g = lorentz_factor(v);
  const Vec<D> w = hat_v(v);
  Mat<D> m{};
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = 0; j < D; ++j)
      m[i][j] = ((i == j ? 1.0 : 0.0) - w[i] * w[j]) / g;
  return m;
}

/// d v̂/dv in one dimension, (1+v²)^(-3/2).
inline double hat_v_derivative(double v) {
  const double g2 = 1.0 + v * v;
  return 1.0 / (g2 * std::sqrt(g2));
}

template <std::size_t D>
struct CharacteristicState {
  Vec<D> x{};
  Vec<D> v{};
  double t = 0.0;
};

/// ∂_z Z is stored row-major as a (2D)x(2D) matrix, z = (x, v).
template <std::size_t D>
using FlowJacobian = Mat<2 * D>;

template <std::size_t D>
struct FlowResult {
  CharacteristicState<D> end;
  std::optional<FlowJacobian<D>> jacobian;
};

/// Field seen by the particles. `gradient` is ∂ₓu; `hessian` (∂ₓ²u) is only
/// needed when the variational matrix is requested.
template <std::size_t D>
struct ForceField {
  std::function<Vec<D>(double, const Vec<D>&)> gradient;
  std::function<Mat<D>(double, const Vec<D>&)> hessian;
};

template <std::size_t D>
ForceField<D> zero_force() {
  return {[](double, const Vec<D>&) { return Vec<D>{}; },
          [](double, const Vec<D>&) { return Mat<D>{}; }};
}

/// Raised when the field returns a non-finite value along a trajectory.
class IntegrationFailure : public std::runtime_error {
 public:
  IntegrationFailure(double t, double x0)
      : std::runtime_error("non-finite field value at t=" + std::to_string(t) +
                           ", x[0]=" + std::to_string(x0)),
        t_(t),
        x0_(x0) {}
  double time() const { return t_; }
  double position() const { return x0_; }

 private:
  double t_;
  double x0_;
};

namespace detail {

template <std::size_t D>
struct AugmentedState {
  Vec<D> x{};
  Vec<D> v{};
  FlowJacobian<D> jac{};
};

template <std::size_t D>
Vec<D> checked_gradient(const ForceField<D>& field, double t, const Vec<D>& x) {
  const Vec<D> g = field.gradient(t, x);
  for (double c : g)
    if (!std::isfinite(c)) throw IntegrationFailure(t, x[0]);
  return g;
}

template <std::size_t D>
AugmentedState<D> rhs(const ForceField<D>& field, double t, const AugmentedState<D>& s,
                      bool with_jacobian) {
  AugmentedState<D> d;
  d.x = hat_v(s.v);
  const Vec<D> g = checked_gradient(field, t, s.x);
  for (std::size_t i = 0; i < D; ++i) d.v[i] = -g[i];
  if (with_jacobian) {
    // ∂_z G = [[0, c(v)], [-∂ₓ²u, 0]]
    const Mat<D> c = hat_v_jacobian(s.v);
    const Mat<D> h = field.hessian(t, s.x);
    for (std::size_t i = 0; i < D; ++i) {
      for (std::size_t col = 0; col < 2 * D; ++col) {
        double top = 0.0;
        double bottom = 0.0;
        for (std::size_t k = 0; k < D; ++k) {
          top += c[i][k] * s.jac[D + k][col];
          bottom -= h[i][k] * s.jac[k][col];
        }
        d.jac[i][col] = top;
        d.jac[D + i][col] = bottom;
      }
    }
  }
  return d;
}

template <std::size_t D>
AugmentedState<D> axpy(const AugmentedState<D>& s, double a, const AugmentedState<D>& d,
                       bool with_jacobian) {
  AugmentedState<D> r;
  for (std::size_t i = 0; i < D; ++i) {
    r.x[i] = s.x[i] + a * d.x[i];
    r.v[i] = s.v[i] + a * d.v[i];
  }
  if (with_jacobian)
    for (std::size_t i = 0; i < 2 * D; ++i)
      for (std::size_t j = 0; j < 2 * D; ++j) r.jac[i][j] = s.jac[i][j] + a * d.jac[i][j];
  return r;
}

}  // namespace detail

/// Integrates the characteristic system from z0.t to t1 with equal RK4 steps
/// no longer than dt. Backward integration (t1 < z0.t) uses a negative step.
template <std::size_t D>
FlowResult<D> advance_characteristics(const CharacteristicState<D>& z0, const ForceField<D>& field,
                                      double t1, double dt, bool with_jacobian = false) {
  if (!(dt > 0.0)) throw std::invalid_argument("advance_characteristics: dt must be positive");
  const double span = t1 - z0.t;
  const auto steps = static_cast<long>(std::ceil(std::abs(span) / dt - 1e-9));
  detail::AugmentedState<D> s{z0.x, z0.v, identity_matrix<2 * D>()};
  double t = z0.t;
  if (steps > 0) {
    const double h = span / static_cast<double>(steps);
    for (long n = 0; n < steps; ++n) {
      const auto k1 = detail::rhs(field, t, s, with_jacobian);
      const auto k2 = detail::rhs(field, t + 0.5 * h, detail::axpy(s, 0.5 * h, k1, with_jacobian),
                                  with_jacobian);
      const auto k3 = detail::rhs(field, t + 0.5 * h, detail::axpy(s, 0.5 * h, k2, with_jacobian),
                                  with_jacobian);
      const auto k4 =
          detail::rhs(field, t + h, detail::axpy(s, h, k3, with_jacobian), with_jacobian);
      for (std::size_t i = 0; i < D; ++i) {
        s.x[i] += h / 6.0 * (k1.x[i] + 2.0 * k2.x[i] + 2.0 * k3.x[i] + k4.x[i]);
        s.v[i] += h / 6.0 * (k1.v[i] + 2.0 * k2.v[i] + 2.0 * k3.v[i] + k4.v[i]);
      }
      if (with_jacobian)
        for (std::size_t i = 0; i < 2 * D; ++i)
          for (std::size_t j = 0; j < 2 * D; ++j)
            s.jac[i][j] += h / 6.0 *
                           (k1.jac[i][j] + 2.0 * k2.jac[i][j] + 2.0 * k3.jac[i][j] + k4.jac[i][j]);
      t = z0.t + span * static_cast<double>(n + 1) / static_cast<double>(steps);
    }
  }
  FlowResult<D> out;
  out.end = {s.x, s.v, t1};
  if (with_jacobian) out.jacobian = s.jac;
  return out;
}

/// Max-norm deviation between the co-integrated variational matrix and a
/// central finite difference of the flow endpoints with step h.
template <std::size_t D>
double flow_jacobian_fd_check(const CharacteristicState<D>& z0, const ForceField<D>& field, double t1,
                              double dt, double h = 1e-5) {
  const auto exact = advance_characteristics(z0, field, t1, dt, true);
  double worst = 0.0;
  for (std::size_t col = 0; col < 2 * D; ++col) {
    CharacteristicState<D> plus = z0;
    CharacteristicState<D> minus = z0;
    if (col < D) {
      plus.x[col] += h;
      minus.x[col] -= h;
    } else {
      plus.v[col - D] += h;
      minus.v[col - D] -= h;
    }
    const auto zp = advance_characteristics(plus, field, t1, dt).end;
    const auto zm = advance_characteristics(minus, field, t1, dt).end;
    for (std::size_t row = 0; row < 2 * D; ++row) {
      const double fp = row < D ? zp.x[row] : zp.v[row - D];
      const double fm = row < D ? zm.x[row] : zm.v[row - D];
      const double fd = (fp - fm) / (2.0 * h);
      worst = std::max(worst, std::abs(fd - (*exact.jacobian)[row][col]));
    }
  }
  return worst;
}

template <std::size_t D>
double determinant(Mat<D> m) {
  double det = 1.0;
  for (std::size_t c = 0; c < D; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < D; ++r)
      if (std::abs(m[r][c]) > std::abs(m[pivot][c])) pivot = r;
    if (m[pivot][c] == 0.0) return 0.0;
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < D; ++r) {
      const double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < D; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

}  // namespace vkg

#include "vkg/retarded.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vkg/bessel.hpp"

namespace vkg {

namespace {

struct ConeSums {
  double i0 = 0.0;   // ∫ ρ J₀(ξ) dy
  double i1x = 0.0;  // ∫ ρ J₁(ξ)/ξ (x-y) dy
  double i1t = 0.0;  // ∫ ρ J₁(ξ)/ξ τ dy
  double trace_minus = 0.0;  // ρ(x+τ) - ρ(x-τ)
  double trace_plus = 0.0;   // ρ(x+τ) + ρ(x-τ)
};

ConeSums cone_sums(const SpatialGrid1D& grid, const std::vector<double>& rho, double x, double tau) {
  ConeSums out;
  const double a = x - tau;
  const double b = x + tau;
  const double ra = grid.interpolate_linear(rho, a);
  const double rb = grid.interpolate_linear(rho, b);
  out.trace_minus = rb - ra;
  out.trace_plus = rb + ra;

  const double dx = grid.dx();
  int lo = static_cast<int>(std::floor((a - grid.x_min()) / dx)) + 1;
  int hi = static_cast<int>(std::ceil((b - grid.x_min()) / dx)) - 1;
  lo = std::max(lo, 0);
  hi = std::min(hi, grid.size() - 1);

  // Integrand triples at y = a, where ξ = 0, J₀ = 1, J₁(ξ)/ξ = 1/2, x - y = τ.
  double prev_y = a;
  double prev[3] = {ra, 0.5 * tau * ra, 0.5 * tau * ra};
  auto accumulate = [&](double y, const double cur[3]) {
    const double h = 0.5 * (y - prev_y);
    out.i0 += h * (prev[0] + cur[0]);
    out.i1x += h * (prev[1] + cur[1]);
    out.i1t += h * (prev[2] + cur[2]);
    prev_y = y;
    for (int q = 0; q < 3; ++q) prev[q] = cur[q];
  };
  for (int i = lo; i <= hi; ++i) {
    const double y = grid.x(i);
    const double r = rho[static_cast<std::size_t>(i)];
    const double d = x - y;
    const double z = std::max(0.0, tau * tau - d * d);
    const double k1 = bessel_ratio_sq(1, z);
    const double cur[3] = {r * bessel_ratio_sq(0, z), r * k1 * d, r * k1 * tau};
    accumulate(y, cur);
  }
  const double end[3] = {rb, -tau * rb * 0.5, tau * rb * 0.5};
  accumulate(b, end);
  return out;
}

}  // namespace

RetardedValues retarded_point_reference(const FieldHistory& hist, double t, double x) {
  const auto& grid = hist.grid();
  if (t < 0.0 || t > hist.coverage_limit() * (1.0 + 1e-12) + 1e-14)
    throw DomainCoverageError("retarded integral at t=" + std::to_string(t) +
                              " is not covered by the density history (limit " +
                              std::to_string(hist.coverage_limit()) + ")");
  if (x < grid.x_min() || x > grid.x_max())
    throw DomainCoverageError("retarded integral at x=" + std::to_string(x) + " is off the grid");

  // s-nodes: stored slices strictly before t, then t itself (zero integrand).
  const double dt = hist.dt();
  std::size_t count = 0;
  while (count < hist.size() && hist.time(count) < t - 1e-12 * dt) ++count;

  RetardedValues out;
  for (std::size_t m = 0; m < count; ++m) {
    const double s = hist.time(m);
    const double s_prev = m == 0 ? s : hist.time(m - 1);
    const double s_next = m + 1 < count ? hist.time(m + 1) : t;
    const double w = 0.5 * (s_next - s_prev);
    const auto c = cone_sums(grid, hist.rho(m), x, t - s);
    out.u += -0.5 * w * c.i0;
    out.ux += -0.5 * w * (c.trace_minus + c.i1x);
    out.ut += -0.5 * w * c.trace_plus + 0.5 * w * c.i1t;
  }
  return out;
}

double u_inhomogeneous(const FieldHistory& hist, double t, double x) {
  return retarded_point_reference(hist, t, x).u;
}

double dx_u_inhomogeneous(const FieldHistory& hist, double t, double x) {
  return retarded_point_reference(hist, t, x).ux;
}

double dt_u_inhomogeneous(const FieldHistory& hist, double t, double x) {
  return retarded_point_reference(hist, t, x).ut;
}

RetardedField1D::RetardedField1D(const SpatialGrid1D& grid, double dt) : grid_(grid), dt_(dt) {
  if (!(dt > 0.0)) throw ConfigError("retarded evaluator needs a positive time step");
}

RetardedField1D::LagStencil RetardedField1D::build(std::size_t m) const {
  LagStencil st;
  if (m == 0) return st;
  const double dx = grid_.dx();
  const double tau = static_cast<double>(m) * dt_;
  const double r = tau / dx;
  const int J = static_cast<int>(std::ceil(r - 1e-12)) - 1;
  const double theta = r - J;
  const double delta = theta * dx;
  st.half = J + 1;
  const auto len = static_cast<std::size_t>(2 * J + 3);
  st.wu.assign(len, 0.0);
  st.wx.assign(len, 0.0);
  st.wt.assign(len, 0.0);
  auto at = [&](std::vector<double>& w, int j) -> double& {
    return w[static_cast<std::size_t>(j + J + 1)];
  };

  // Interior nodes.
  for (int j = -J; j <= J; ++j) {
    double wy;
    if (J == 0)
      wy = delta;
    else if (std::abs(j) == J)
      wy = 0.5 * (dx + delta);
    else
      wy = dx;
    const double d = -j * dx;  // x - y
    const double z = std::max(0.0, tau * tau - d * d);
    const double k1 = bessel_ratio_sq(1, z);
    at(st.wu, j) += -0.5 * wy * bessel_ratio_sq(0, z);
    at(st.wx, j) += -0.5 * wy * k1 * d;
    at(st.wt, j) += 0.5 * wy * k1 * tau;
  }

  // Cone ends y = x ± τ: trapezoid end weight δ/2, kernel at ξ = 0, and the
  // boundary traces. ρ there is interpolated between offsets ±J and ±(J+1).
  const double we = 0.5 * delta;
  for (int side : {+1, -1}) {
    const double d = -side * tau;
    const double cu = -0.5 * we;                                  // J₀(0) = 1
    const double cx = -0.5 * we * 0.5 * d - 0.5 * static_cast<double>(side);  // J₁/ξ → 1/2
    const double ct = 0.5 * we * 0.5 * tau - 0.5;
    at(st.wu, side * J) += (1.0 - theta) * cu;
    at(st.wu, side * (J + 1)) += theta * cu;
    at(st.wx, side * J) += (1.0 - theta) * cx;
    at(st.wx, side * (J + 1)) += theta * cx;
    at(st.wt, side * J) += (1.0 - theta) * ct;
    at(st.wt, side * (J + 1)) += theta * ct;
  }
  return st;
}

const RetardedField1D::LagStencil& RetardedField1D::stencil(std::size_t m) {
  while (lags_.size() <= m) lags_.push_back(build(lags_.size()));
  return lags_[m];
}

int RetardedField1D::half_width(std::size_t m) { return stencil(m).half; }

RetardedGridValues RetardedField1D::evaluate(const FieldHistory& hist, std::size_t n,
                                             unsigned which) {
  if (!(hist.grid() == grid_) || std::abs(hist.dt() - dt_) > 1e-14 * dt_)
    throw ConfigError("history grid or time step does not match the evaluator");
  if (n > hist.size())
    throw DomainCoverageError("history holds " + std::to_string(hist.size()) +
                              " slices, evaluation at step " + std::to_string(n) + " needs " +
                              std::to_string(n));
  for (std::size_t m = 0; m <= n; ++m) stencil(m);

  const int nx = grid_.size();
  RetardedGridValues out;
  if (which & kU) out.u.assign(static_cast<std::size_t>(nx), 0.0);
  if (which & kUx) out.ux.assign(static_cast<std::size_t>(nx), 0.0);
  if (which & kUt) out.ut.assign(static_cast<std::size_t>(nx), 0.0);

#pragma omp parallel for schedule(dynamic, 8)
  for (int i = 0; i < nx; ++i) {
    double su = 0.0;
    double sx = 0.0;
    double st = 0.0;
    for (std::size_t m = 1; m <= n; ++m) {
      const std::size_t slice = n - m;
      const IndexRange sup = hist.support(slice);
      if (sup.empty()) continue;
      const LagStencil& L = lags_[m];
      const int jlo = std::max(-L.half, sup.lo - i);
      const int jhi = std::min(L.half, sup.hi - i);
      if (jlo > jhi) continue;
      const double cm = m == n ? 0.5 * dt_ : dt_;
      const double* rho = hist.rho(slice).data() + i;
      double au = 0.0;
      double ax = 0.0;
      double at = 0.0;
      const auto base = static_cast<std::ptrdiff_t>(L.half);
      for (int j = jlo; j <= jhi; ++j) {
        const double r = rho[j];
        const auto k = static_cast<std::size_t>(base + j);
        au += L.wu[k] * r;
        ax += L.wx[k] * r;
        at += L.wt[k] * r;
      }
      su += cm * au;
      sx += cm * ax;
      st += cm * at;
    }
    const auto idx = static_cast<std::size_t>(i);
    if (which & kU) out.u[idx] = su;
    if (which & kUx) out.ux[idx] = sx;
    if (which & kUt) out.ut[idx] = st;
  }
  return out;
}

}  // namespace vkg

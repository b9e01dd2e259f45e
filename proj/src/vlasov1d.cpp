#include "vkg/vlasov1d.hpp"

#include <algorithm>
#include <cmath>

namespace vkg {

void cubic_weights(double p, double w[4]) {
  const double a = p;
  const double b = p - 1.0;
  const double c = p - 2.0;
  const double d = p - 3.0;
  w[0] = -b * c * d / 6.0;
  w[1] = a * c * d / 2.0;
  w[2] = -a * b * d / 2.0;
  w[3] = a * b * c / 6.0;
}

int cubic_stencil(double s, int n, double w[4]) {
  int i0 = static_cast<int>(std::floor(s)) - 1;
  i0 = std::clamp(i0, 0, std::max(0, n - 4));
  cubic_weights(s - i0, w);
  return i0;
}

double GridForce::operator()(double t, double x) const {
  const double s = (x - grid->x_min()) / grid->dx();
  const int n = grid->size();
  if (s < 0.0 || s > n - 1) return 0.0;
  double w[4];
  const int i0 = cubic_stencil(s, n, w);
  double a = 0.0;
  double b = 0.0;
  for (int k = 0; k < 4; ++k) {
    const auto idx = static_cast<std::size_t>(i0 + k);
    a += w[k] * at_start[idx];
    b += w[k] * at_end[idx];
  }
  const double span = t_end - t_start;
  const double th = span == 0.0 ? 0.0 : (t - t_start) / span;
  return (1.0 - th) * a + th * b;
}

ForceField<1> to_force_field(const ForceFn& force) {
  ForceField<1> f;
  f.gradient = [force](double t, const Vec<1>& x) { return Vec<1>{force(t, x[0])}; };
  f.hessian = [force](double t, const Vec<1>& x) {
    const double h = 1e-5;
    return Mat<1>{{{(force(t, x[0] + h) - force(t, x[0] - h)) / (2.0 * h)}}};
  };
  return f;
}

double interpolate_phase(const SpatialGrid1D& x_axis, const SpatialGrid1D& v_axis,
                         const std::vector<double>& values, double x, double v) {
  const int nx = x_axis.size();
  const int nv = v_axis.size();
  double wx[4];
  double wv[4];
  const int ix = cubic_stencil((x - x_axis.x_min()) / x_axis.dx(), nx, wx);
  const int iv = cubic_stencil((v - v_axis.x_min()) / v_axis.dx(), nv, wv);
  const int kx = std::min(4, nx);
  const int kv = std::min(4, nv);
  double s = 0.0;
  for (int a = 0; a < kx; ++a) {
    const double* row =
        values.data() + static_cast<std::size_t>(ix + a) * static_cast<std::size_t>(nv) + iv;
    double r = 0.0;
    for (int b = 0; b < kv; ++b) r += wv[b] * row[b];
    s += wx[a] * r;
  }
  return s;
}

namespace {

struct Foot {
  double x;
  double v;
};

// One RK4 step of dx/ds = v̂, dv/ds = -F from (x, v) at time t1 over h.
template <class Force>
Foot rk4(const Force& force, double t1, double h, double x, double v) {
  const double k1x = hat_v(v);
  const double k1v = -force(t1, x);
  const double k2x = hat_v(v + 0.5 * h * k1v);
  const double k2v = -force(t1 + 0.5 * h, x + 0.5 * h * k1x);
  const double k3x = hat_v(v + 0.5 * h * k2v);
  const double k3v = -force(t1 + 0.5 * h, x + 0.5 * h * k2x);
  const double k4x = hat_v(v + h * k3v);
  const double k4v = -force(t1 + h, x + h * k3x);
  const double fx = x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
  const double fv = v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  if (!std::isfinite(fx) || !std::isfinite(fv)) throw IntegrationFailure(t1, x);
  return {fx, fv};
}

void finish(PhaseGrid& out, const PhaseGrid& in, StepOptions opts, StepStats* stats,
            double clipped) {
  if (stats) stats->clipped_mass += clipped * in.x_axis().dx() * in.v_axis().dx();
  out.update_support(in.support_threshold());
  if (opts.check_coverage) out.check_coverage(2, "semi-Lagrangian step");
}

template <class Force>
PhaseGrid sl_step(const PhaseGrid& f, const Force& force, double t, double dt, StepOptions opts,
                  StepStats* stats) {
  if (dt == 0.0 || !std::isfinite(dt)) throw ConfigError("semi-Lagrangian step needs dt != 0");
  if (opts.check_coverage) f.check_coverage(2, "semi-Lagrangian step");
  PhaseGrid out(f.x_axis(), f.v_axis());
  const int nx = f.nx();
  const int nv = f.nv();
  const double t1 = t + dt;
  double clipped = 0.0;
  // Rows are independent; the clipped-mass sum is kept per row and reduced
  // serially so the total does not depend on the thread count.
  std::vector<double> row_clip(static_cast<std::size_t>(nx), 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nx; ++i) {
    const double x = f.x_axis().x(i);
    double c = 0.0;
    for (int j = 0; j < nv; ++j) {
      const Foot z = rk4(force, t1, -dt, x, f.v_axis().x(j));
      double val = interpolate_phase(f, z.x, z.v);
      if (opts.clip && val < 0.0) {
        const double wx = (i == 0 || i == nx - 1) ? 0.5 : 1.0;
        const double wv = (j == 0 || j == nv - 1) ? 0.5 : 1.0;
        c += wx * wv * -val;
        val = 0.0;
      }
      out.at(i, j) = val;
    }
    row_clip[static_cast<std::size_t>(i)] = c;
  }
  for (double c : row_clip) clipped += c;
  finish(out, f, opts, stats, clipped);
  return out;
}

}  // namespace

PhaseGrid semi_lagrangian_step(const PhaseGrid& f, const ForceFn& force, double t, double dt,
                               StepOptions opts, StepStats* stats) {
  return sl_step(f, force, t, dt, opts, stats);
}

PhaseGrid semi_lagrangian_step(const PhaseGrid& f, const GridForce& force, double t, double dt,
                               StepOptions opts, StepStats* stats) {
  return sl_step(f, force, t, dt, opts, stats);
}

PhaseGrid semi_lagrangian_step_reference(const PhaseGrid& f, const ForceField<1>& force, double t,
                                         double dt, StepOptions opts) {
  if (dt == 0.0 || !std::isfinite(dt)) throw ConfigError("semi-Lagrangian step needs dt != 0");
  if (opts.check_coverage) f.check_coverage(2, "semi-Lagrangian step");
  PhaseGrid out(f.x_axis(), f.v_axis());
  for (int i = 0; i < f.nx(); ++i) {
    for (int j = 0; j < f.nv(); ++j) {
      const CharacteristicState<1> z{{f.x_axis().x(i)}, {f.v_axis().x(j)}, t + dt};
      const auto foot = advance_characteristics(z, force, t, std::abs(dt)).end;
      const double val = interpolate_phase(f, foot.x[0], foot.v[0]);
      out.at(i, j) = opts.clip ? std::max(0.0, val) : val;
    }
  }
  finish(out, f, opts, nullptr, 0.0);
  return out;
}

VlasovState::VlasovState(InitialParticleData data, const SpatialGrid1D& x_axis,
                         const SpatialGrid1D& v_axis)
    : data_(std::move(data)),
      f_(PhaseGrid::sample(x_axis, v_axis, data_)),
      map_x_(f_.values().size(), 0.0),
      map_v_(f_.values().size(), 0.0) {
  f_.check_coverage(2, "initial particle data");
}

template <class Force>
void VlasovState::step_impl(const Force& force, double dt) {
  if (dt == 0.0 || !std::isfinite(dt)) throw ConfigError("Vlasov step needs dt != 0");
  const auto& xa = f_.x_axis();
  const auto& va = f_.v_axis();
  const int nx = f_.nx();
  const int nv = f_.nv();
  std::vector<double> nx_map(map_x_.size());
  std::vector<double> nv_map(map_v_.size());
  PhaseGrid next(xa, va);
  const double t1 = t_ + dt;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < nx; ++i) {
    const double x = xa.x(i);
    for (int j = 0; j < nv; ++j) {
      const double v = va.x(j);
      const Foot z = rk4(force, t1, -dt, x, v);
      double x0;
      double v0;
      if (z.x < xa.x_min() || z.x > xa.x_max()) {
        // Inflow: the field vanishes off the grid, so the characteristic
        // streams freely back to t = 0. Extrapolating D here is unstable.
        x0 = z.x - hat_v(z.v) * t_;
        v0 = z.v;
      } else {
        // Z(0, t+dt, node) = Z(0, t, foot) = foot + D(foot)
        const double zv = std::clamp(z.v, va.x_min(), va.x_max());
        x0 = z.x + interpolate_phase(xa, va, map_x_, z.x, zv);
        v0 = z.v + interpolate_phase(xa, va, map_v_, z.x, zv);
      }
      const std::size_t k = next.index(i, j);
      nx_map[k] = x0 - x;
      nv_map[k] = v0 - v;
      next.values()[k] = data_.density(x0, v0);
    }
  }
  map_x_ = std::move(nx_map);
  map_v_ = std::move(nv_map);
  next.update_support(f_.support_threshold());
  f_ = std::move(next);
  t_ = t1;
  f_.check_coverage(2, "Vlasov transport");
}

void VlasovState::step(const GridForce& force, double dt) { step_impl(force, dt); }
void VlasovState::step(const ForceFn& force, double dt) { step_impl(force, dt); }

std::vector<PhaseGrid> solve_inhomogeneous_vlasov(const InitialParticleData& data,
                                                  const SourceFn& source, const ForceFn& force,
                                                  const SpatialGrid1D& x_axis,
                                                  const SpatialGrid1D& v_axis, double T, double dt) {
  if (!(dt > 0.0) || !(T >= 0.0)) throw ConfigError("inhomogeneous Vlasov solve needs dt > 0, T >= 0");
  const auto steps = static_cast<long>(std::ceil(T / dt - 1e-9));
  const double h = steps > 0 ? T / static_cast<double>(steps) : dt;
  VlasovState state(data, x_axis, v_axis);
  const int nx = x_axis.size();
  const int nv = v_axis.size();
  std::vector<double> g(state.f().values().size(), 0.0);

  std::vector<PhaseGrid> out;
  out.reserve(static_cast<std::size_t>(steps + 1));
  out.push_back(state.f());
  for (long n = 0; n < steps; ++n) {
    const double t0 = static_cast<double>(n) * h;
    const double t1 = static_cast<double>(n + 1) * h;
    std::vector<double> g_next(g.size());
#pragma omp parallel for schedule(static)
    for (int i = 0; i < nx; ++i) {
      const double x = x_axis.x(i);
      for (int j = 0; j < nv; ++j) {
        const double v = v_axis.x(j);
        const Foot z = rk4(force, t1, -h, x, v);
        const std::size_t k = static_cast<std::size_t>(i) * static_cast<std::size_t>(nv) +
                              static_cast<std::size_t>(j);
        g_next[k] = interpolate_phase(x_axis, v_axis, g, z.x, z.v) +
                    0.5 * h * (source(t0, z.x, z.v) + source(t1, x, v));
      }
    }
    g = std::move(g_next);
    state.step(force, h);
    PhaseGrid f = state.f();
    for (std::size_t k = 0; k < g.size(); ++k) f.values()[k] += g[k];
    f.update_support(state.f().support_threshold());
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace vkg

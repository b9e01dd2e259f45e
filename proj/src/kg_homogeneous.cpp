#include "vkg/kg_homogeneous.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>

namespace vkg {

namespace {

// FFTW planning is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

std::vector<std::complex<double>> forward(const std::vector<double>& values) {
  const int n = static_cast<int>(values.size());
  std::vector<double> in(values);
  std::vector<std::complex<double>> out(static_cast<std::size_t>(n / 2 + 1));
  Plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_r2c_1d(n, in.data(), reinterpret_cast<fftw_complex*>(out.data()),
                                    FFTW_ESTIMATE));
  }
  fftw_execute(plan.get());
  return out;
}

int next_fft_size(int n) {
  for (;; ++n) {
    int m = n;
    for (int p : {2, 3, 5}) while (m % p == 0) m /= p;
    if (m == 1) return n;
  }
}

}  // namespace

PaddedGrid pad_for_horizon(const SpatialGrid1D& grid, const InitialFieldData& data, double horizon) {
  const double dx = grid.dx();
  const double a = grid.x_min();
  const double b = grid.x_max();
  double lo = a;
  double hi = b;
  for (const auto* p : {&data.u1, &data.u2}) {
    if (!p->compact()) throw ConfigError("padded field evolution needs compactly supported data");
    lo = std::min(lo, p->support_lo());
    hi = std::max(hi, p->support_hi());
  }
  // The extension must contain the data and be long enough that periodic
  // images stay off the physical grid: L > max(b - lo, hi - a) + horizon.
  const double need_len = std::max(b - lo, hi - a) + horizon + 4.0 * dx;
  int left = static_cast<int>(std::ceil((a - lo) / dx)) + 2;
  int right = static_cast<int>(std::ceil((hi - b) / dx)) + 2;
  int n_ext = grid.size() + left + right;
  const int need = static_cast<int>(std::ceil(need_len / dx));
  if (n_ext < need) {
    const int extra = need - n_ext;
    left += extra / 2;
    right += extra - extra / 2;
    n_ext = need;
  }
  const int nice = next_fft_size(n_ext);
  right += nice - n_ext;
  n_ext = nice;
  const SpatialGrid1D ext(a - left * dx, a + (n_ext - 1 - left) * dx, n_ext);
  return {ext, left};
}

HomogeneousKG::HomogeneousKG(const SpatialGrid1D& grid, const InitialFieldData& data, double horizon)
    : HomogeneousKG(grid, pad_for_horizon(grid, data, horizon), data, false) {}

HomogeneousKG HomogeneousKG::periodic(const SpatialGrid1D& grid, const InitialFieldData& data) {
  return HomogeneousKG(grid, PaddedGrid{grid, 0}, data, true);
}

HomogeneousKG::HomogeneousKG(const SpatialGrid1D& grid, const PaddedGrid& padded,
                             const InitialFieldData& data, bool periodic)
    : grid_(grid), padded_(padded), n_ext_(padded.grid.size()) {
  const double dx = padded_.grid.dx();
  period_ = n_ext_ * dx;
  std::vector<double> u1(static_cast<std::size_t>(n_ext_));
  std::vector<double> u2(static_cast<std::size_t>(n_ext_));
  for (int i = 0; i < n_ext_; ++i) {
    const double x = padded_.grid.x(i);
    u1[static_cast<std::size_t>(i)] = data.u1(x);
    u2[static_cast<std::size_t>(i)] = data.u2(x);
  }
  hat_u1_ = forward(u1);
  hat_u2_ = forward(u2);
  k_.resize(hat_u1_.size());
  for (std::size_t m = 0; m < k_.size(); ++m) k_[m] = 2.0 * std::numbers::pi * m / period_;

  if (periodic) {
    safe_horizon_ = std::numeric_limits<double>::infinity();
  } else {
    double lo = grid.x_min();
    double hi = grid.x_max();
    for (const auto* p : {&data.u1, &data.u2}) {
      lo = std::min(lo, p->support_lo());
      hi = std::max(hi, p->support_hi());
    }
    safe_horizon_ = period_ - std::max(grid.x_max() - lo, hi - grid.x_min());
  }
}

std::vector<std::complex<double>> HomogeneousKG::modes_at(double t, int which) const {
  std::vector<std::complex<double>> out(hat_u1_.size());
  for (std::size_t m = 0; m < out.size(); ++m) {
    const double k = k_[m];
    const double w = std::sqrt(1.0 + k * k);
    const double c = std::cos(w * t);
    const double s = std::sin(w * t);
    const std::complex<double> u = hat_u1_[m] * c + hat_u2_[m] * (s / w);
    if (which == 0) {
      out[m] = u;
    } else if (which == 1) {
      out[m] = -hat_u1_[m] * (w * s) + hat_u2_[m] * c;
    } else {
      const bool nyquist = n_ext_ % 2 == 0 && m + 1 == out.size();
      out[m] = nyquist ? std::complex<double>{} : std::complex<double>(0.0, k) * u;
    }
  }
  return out;
}

std::vector<double> HomogeneousKG::inverse(const std::vector<std::complex<double>>& modes) const {
  std::vector<std::complex<double>> in(modes);
  std::vector<double> out(static_cast<std::size_t>(n_ext_));
  Plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_c2r_1d(n_ext_, reinterpret_cast<fftw_complex*>(in.data()), out.data(),
                                    FFTW_ESTIMATE));
  }
  fftw_execute(plan.get());
  const double scale = 1.0 / n_ext_;
  for (auto& v : out) v *= scale;
  return out;
}

FieldSnapshot HomogeneousKG::evaluate(double t) const {
  if (t < 0.0) throw ConfigError("homogeneous evolution requires t >= 0");
  FieldSnapshot snap;
  snap.t = t;
  snap.boundary_warning = t > safe_horizon_;
  const auto n = static_cast<std::size_t>(grid_.size());
  const auto off = static_cast<std::size_t>(padded_.offset);
  auto take = [&](int which) {
    const auto full = inverse(modes_at(t, which));
    return std::vector<double>(full.begin() + static_cast<std::ptrdiff_t>(off),
                               full.begin() + static_cast<std::ptrdiff_t>(off + n));
  };
  snap.u = take(0);
  snap.ut = take(1);
  snap.ux = take(2);
  return snap;
}

double HomogeneousKG::energy(double t) const {
  const auto u = inverse(modes_at(t, 0));
  const auto ut = inverse(modes_at(t, 1));
  const auto ux = inverse(modes_at(t, 2));
  const double dx = padded_.grid.dx();
  double e = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) e += ut[i] * ut[i] + ux[i] * ux[i] + u[i] * u[i];
  return e * dx;
}

FieldSnapshot solve_homogeneous(const SpatialGrid1D& grid, const InitialFieldData& data, double t) {
  return HomogeneousKG(grid, data, t).evaluate(t);
}

}  // namespace vkg

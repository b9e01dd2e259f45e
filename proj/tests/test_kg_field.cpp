#include <cmath>
#include <numbers>

#include "doctest.h"
#include "vkg/field_history.hpp"
#include "vkg/kg_fd.hpp"
#include "vkg/kg_homogeneous.hpp"
#include "vkg/retarded.hpp"
#include "vkg/verification.hpp"

using namespace vkg;

namespace {

constexpr double kPi = std::numbers::pi;

SpatialGrid1D periodic_grid(int n, double L) { return {0.0, L - L / n, n}; }

double sup(const std::vector<double>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

// History of an even density ρ(s, y) = a e^{-y²}(1 + s). The default a is
// the peak density of the reference coupled scenario.
FieldHistory even_history(const SpatialGrid1D& grid, double dt, std::size_t steps, double a = 0.12) {
  FieldHistory h(grid, dt);
  for (std::size_t m = 0; m < steps; ++m) {
    std::vector<double> rho(static_cast<std::size_t>(grid.size()));
    for (int i = 0; i < grid.size(); ++i)
      rho[static_cast<std::size_t>(i)] = a * std::exp(-grid.x(i) * grid.x(i)) * (1.0 + h.time(m));
    h.append(std::move(rho));
  }
  return h;
}

}  // namespace

TEST_CASE("homogeneous: zero data stays zero") {
  const SpatialGrid1D g(-4, 4, 81);
  const auto s = solve_homogeneous(g, InitialFieldData{}, 2.0);
  CHECK(sup(s.u) == 0.0);
  CHECK(sup(s.ut) == 0.0);
  CHECK(sup(s.ux) == 0.0);
}

TEST_CASE("homogeneous: plane waves follow the dispersion relation") {
  const double L = 2.0 * kPi;
  const auto g = periodic_grid(64, L);
  for (double k : {1.0, 2.0, 4.0}) {
    const double w = std::sqrt(1.0 + k * k);
    const double t = 3.3;
    const auto a = HomogeneousKG::periodic(g, {AnalyticProfile::cosine(1.0, k), AnalyticProfile::zero()})
                       .evaluate(t);
    const auto b = HomogeneousKG::periodic(g, {AnalyticProfile::zero(), AnalyticProfile::cosine(1.0, k)})
                       .evaluate(t);
    double ea = 0.0, eb = 0.0, ex = 0.0;
    for (int i = 0; i < g.size(); ++i) {
      const double x = g.x(i);
      const auto j = static_cast<std::size_t>(i);
      ea = std::max(ea, std::abs(a.u[j] - std::cos(w * t) * std::cos(k * x)));
      ex = std::max(ex, std::abs(a.ux[j] + k * std::cos(w * t) * std::sin(k * x)));
      eb = std::max(eb, std::abs(b.u[j] - std::sin(w * t) * std::cos(k * x) / w));
    }
    CHECK(ea < 1e-10);
    CHECK(eb < 1e-10);
    CHECK(ex < 1e-10);
  }
}

TEST_CASE("homogeneous: energy is conserved and padding covers the horizon") {
  const SpatialGrid1D g(-5, 5, 201);
  const InitialFieldData d{AnalyticProfile::bump(0.5, 1.0), AnalyticProfile::gaussian(0.2, 0.5)};
  const HomogeneousKG kg(g, d, 6.0);
  CHECK(kg.safe_horizon() >= 6.0);
  CHECK(kg.energy(5.0) == doctest::Approx(kg.energy(0.0)).epsilon(1e-12));
  CHECK_FALSE(kg.evaluate(6.0).boundary_warning);
  CHECK(kg.evaluate(kg.safe_horizon() + 1.0).boundary_warning);
  CHECK_THROWS_AS(HomogeneousKG(g, {AnalyticProfile::cosine(1, 1), AnalyticProfile::zero()}, 1.0),
                  ConfigError);
}

TEST_CASE("retarded: zero density gives zero") {
  const SpatialGrid1D g(-3, 3, 121);
  FieldHistory h(g, 0.025);
  for (int m = 0; m < 40; ++m) h.append(std::vector<double>(121, 0.0));
  CHECK(u_inhomogeneous(h, 1.0, 0.3) == 0.0);
  CHECK(dx_u_inhomogeneous(h, 1.0, 0.3) == 0.0);
  RetardedField1D ev(g, 0.025);
  CHECK(sup(ev.evaluate(h, 40).ux) == 0.0);
}

TEST_CASE("retarded: symmetry, consistency, reference agreement") {
  const SpatialGrid1D g(-6, 6, 481);
  const double dt = 0.5 * g.dx();
  const std::size_t n = 80;
  const FieldHistory h = even_history(g, dt, n);
  const double t = static_cast<double>(n) * dt;
  CHECK(std::abs(dx_u_inhomogeneous(h, t, 0.0)) < 1e-14);

  RetardedField1D ev(g, dt);
  const auto all = ev.evaluate(h, n);
  CHECK(std::abs(all.ux[240]) < 1e-14);
  double diff = 0.0, fd = 0.0;
  for (int i = 160; i <= 320; ++i) {
    const auto r = retarded_point_reference(h, t, g.x(i));
    const auto k = static_cast<std::size_t>(i);
    diff = std::max({diff, std::abs(r.u - all.u[k]), std::abs(r.ux - all.ux[k]), std::abs(r.ut - all.ut[k])});
    fd = std::max(fd, std::abs((all.u[k + 1] - all.u[k - 1]) / (2 * g.dx()) - all.ux[k]));
  }
  CHECK(diff < 1e-13);
  CHECK(fd < 1e-4);
}

TEST_CASE("retarded: finite-difference consistency is second order") {
  auto residual = [](int nodes) {
    const SpatialGrid1D g(-6, 6, nodes);
    const double dt = 0.5 * g.dx();
    const auto n = static_cast<std::size_t>(std::llround(1.0 / dt));
    RetardedField1D ev(g, dt);
    const auto a = ev.evaluate(even_history(g, dt, n), n);
    double fd = 0.0;
    for (int i = 1; i < nodes - 1; ++i) {
      const auto k = static_cast<std::size_t>(i);
      fd = std::max(fd, std::abs((a.u[k + 1] - a.u[k - 1]) / (2 * g.dx()) - a.ux[k]));
    }
    return fd;
  };
  const double r = residual(241) / residual(481);
  CHECK(r > 3.5);
  CHECK(r < 4.5);
}

TEST_CASE("retarded: coverage is enforced") {
  const SpatialGrid1D g(-6, 6, 241);
  const FieldHistory h = even_history(g, 0.025, 10);
  CHECK_THROWS_AS(retarded_point_reference(h, 0.5, 0.0), DomainCoverageError);
  CHECK_THROWS_AS(retarded_point_reference(h, 0.1, 7.0), DomainCoverageError);
  RetardedField1D ev(g, 0.025);
  CHECK_THROWS_AS(ev.evaluate(h, 11), DomainCoverageError);
  std::vector<double> wide(241, 1.0);
  FieldHistory leaky(g, 0.025);
  CHECK_THROWS_AS(leaky.append(wide), DomainCoverageError);
  RetardedField1D other(g, 0.03);
  CHECK_THROWS_AS(other.evaluate(h, 5), ConfigError);
}

TEST_CASE("manufactured solution is reconstructed") {
  const auto r = field_crossvalidation({256, 512}, 8.0, 2.0);
  REQUIRE(r.levels.size() == 2);
  CHECK(r.levels.back().representation_error < 1e-3);
  CHECK(r.levels.back().fd_error < 1e-3);
  CHECK(r.levels.back().relative_difference < 1e-2);
  CHECK(r.levels[0].relative_difference > r.levels[1].relative_difference);
}

TEST_CASE("leapfrog: zero data and CFL") {
  const SpatialGrid1D g(-4, 4, 161);
  const auto tr = fd_reference_solve(g, InitialFieldData{},
                                     [&](std::size_t, double) { return std::vector<double>(161, 0.0); },
                                     1.0, 0.025);
  for (const auto& u : tr.u) CHECK(sup(u) == 0.0);
  CHECK_THROWS_AS(LeapfrogKG(g, InitialFieldData{}, 0.06), ConfigError);
}

TEST_CASE("leapfrog: dispersion is second order") {
  const auto d = dispersion_check({1.0, 2.0}, {64, 128, 256});
  for (const auto& e : d.entries) {
    CHECK(e.spectral_relative_error < 1e-10);
    for (double o : e.fd_orders) CHECK(o >= 1.8);
  }
}

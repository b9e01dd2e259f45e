#include <cmath>

#include "doctest.h"
#include "vkg/config.hpp"
#include "vkg/coupled.hpp"
#include "vkg/picard.hpp"

using namespace vkg;

namespace {

ScenarioConfig small_config() {
  ScenarioConfig c;
  c.grid.dx = 0.06;
  c.grid.dv = 0.06;
  c.horizon = 1.0;
  return c;
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double rel_l2(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("time steps divide the horizon evenly") {
  const auto [n, dt] = time_steps(1.0, 0.3);
  CHECK(n == 4);
  CHECK(dt == doctest::Approx(0.25));
}

TEST_CASE("zero particles: pure homogeneous field") {
  auto c = small_config();
  c.particles.family = "zero";
  c.grid.x_max = 4.0;
  c.grid.v_max = 2.0;
  const auto p = make_problem(c);
  const auto r = run_coupled(p);
  CHECK(r.f.sup_norm() == 0.0);
  const auto hom = solve_homogeneous(p.x_axis, p.field, p.T);
  CHECK(sup_diff(r.field.ux, hom.ux) < 1e-14);
  CHECK(sup_diff(r.field.u, hom.u) < 1e-14);
  for (const auto& row : r.timeline.rows) {
    CHECK(row.momentum_support == 0.0);
    CHECK(row.max_principle == Check::pass);
    CHECK(row.mass == Check::pass);
  }
  CHECK(continuation_monitor(r.timeline).ok);
}

TEST_CASE("zero field: momentum support stays constant") {
  auto c = small_config();
  c.particles.family = "zero";
  c.u1.family = "zero";
  c.grid.x_max = 3.0;
  c.grid.v_max = 2.0;
  const auto r = run_coupled(make_problem(c));
  for (const auto& row : r.timeline.rows) {
    CHECK(row.ux_sup == 0.0);
    CHECK(row.momentum_support == r.timeline.initial_momentum);
  }
  const auto st = continuation_monitor(r.timeline);
  CHECK(st.ok);
  CHECK_FALSE(st.suspect);
}

TEST_CASE("field at rest: particles alone drive the field") {
  auto c = small_config();
  c.u1.family = "zero";
  const auto r = run_coupled(make_problem(c));
  CHECK(r.timeline.rows.front().ux_sup == 0.0);
  CHECK(r.timeline.rows.back().ux_sup > 0.0);
  CHECK(continuation_monitor(r.timeline).ok);
}

TEST_CASE("coupled run satisfies the a-priori bounds") {
  const auto p = make_problem(small_config());
  const auto r = run_coupled(p);
  REQUIRE_FALSE(r.timeline.blow_up);
  for (const auto& row : r.timeline.rows) {
    CHECK(row.max_principle == Check::pass);
    CHECK(row.mass == Check::pass);
    CHECK(row.support == Check::pass);
    CHECK(row.density_bound == Check::pass);
    CHECK(row.momentum_bound == Check::pass);
  }
  const auto st = continuation_monitor(r.timeline);
  CHECK(st.inequality_holds);
  CHECK(st.worst_excess <= r.timeline.dv);
  for (std::size_t i = 1; i < r.timeline.rows.size(); ++i)
    CHECK(r.timeline.rows[i].t > r.timeline.rows[i - 1].t);
}

TEST_CASE("grid sizing contains the momentum bound") {
  const auto c = small_config();
  const auto g = size_grids(make_particles(c.particles), {make_profile(c.u1), make_profile(c.u2)},
                            c.horizon, c.grid.dx, c.grid.dv);
  CHECK(g.momentum_bound >= 1.0);
  CHECK(g.v_half_width >= 1.5 * g.momentum_bound);
  CHECK(g.x_half_width >= 1.0 + c.horizon);
}

TEST_CASE("representation and leapfrog field variants agree") {
  auto c = small_config();
  const auto a = run_coupled(make_problem(c));
  c.field_solver = FieldSolverKind::finite_difference;
  const auto b = run_coupled(make_problem(c));
  CHECK(rel_l2(b.field.u, a.field.u) < 1e-2);
}

TEST_CASE("Picard: zero data is stationary after one iterate") {
  auto c = small_config();
  c.particles.family = "zero";
  c.grid.x_max = 4.0;
  c.grid.v_max = 2.0;
  const auto res = run_picard(make_problem(c), 10, 1e-6);
  CHECK(res.report.converged);
  for (const auto& e : res.report.entries)
    if (e.n >= 2) CHECK(e.ux_gap == 0.0);
  for (const auto& f : res.last.f) CHECK(f.sup_norm() == 0.0);
}

TEST_CASE("Picard: first iterate is free streaming when the field starts at rest") {
  auto c = small_config();
  c.u1.family = "zero";
  c.particles.amplitude = 0.05;
  const auto p = make_problem(c);
  const auto it1 = picard_iterate(initial_iterate(p), p);
  VlasovState s(p.particles, p.x_axis, p.v_axis);
  const auto [steps, dt] = time_steps(p.T, p.dt);
  for (std::size_t n = 0; n < steps; ++n) s.step([](double, double) { return 0.0; }, dt);
  double d = 0.0;
  for (std::size_t i = 0; i < s.f().values().size(); ++i)
    d = std::max(d, std::abs(s.f().values()[i] - it1.f.back().values()[i]));
  CHECK(d < 1e-15);
}

TEST_CASE("Picard: gaps decay and the limit is the coupled solution") {
  const auto p = make_problem(small_config());
  const auto res = run_picard(p, 25, 1e-6);
  const auto& e = res.report.entries;
  REQUIRE(res.report.converged);
  REQUIRE(e.size() >= 4);
  CHECK(res.report.monotone_from(2));
  for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i].ratio < 1.0);

  // golden values measured on this configuration
  CHECK(e[0].ux_gap == doctest::Approx(0.34157567747406326).epsilon(1e-6));
  CHECK(e[1].ux_gap == doctest::Approx(0.00067484050925059602).epsilon(1e-4));

  const auto direct = run_coupled(p, {}, 0, true);
  REQUIRE(direct.ux_trajectory.size() == res.last.ux.size());
  double d = 0.0;
  for (std::size_t k = 0; k < direct.ux_trajectory.size(); ++k)
    d = std::max(d, sup_diff(direct.ux_trajectory[k], res.last.ux[k]));
  CHECK(d < 1e-9);
}

TEST_CASE("cauchy gap") {
  const auto p = make_problem(small_config());
  const auto it0 = initial_iterate(p);
  const auto g = cauchy_gap(it0, it0);
  CHECK(g.ux_gap == 0.0);
  CHECK(g.f_gap == 0.0);
  auto c = small_config();
  c.horizon = 0.5;
  CHECK_THROWS_AS(cauchy_gap(it0, initial_iterate(make_problem(c))), ConfigError);
}

TEST_CASE("time refinement") {
  auto c = small_config();
  auto run = [&](double dt) {
    c.dt = dt;
    return run_coupled(make_problem(c)).field.ux;
  };
  const auto a = run(0.04), b = run(0.02), d = run(0.01);
  const double r = sup_diff(a, b) / sup_diff(b, d);
  MESSAGE("refinement ratio " << r);
  CHECK(r > 3.0);
}

TEST_CASE("sign conventions: source -rho, force -u_x") {
  // A static positive density drives u negative under the origin.
  const SpatialGrid1D g(-4, 4, 161);
  const double dt = 0.5 * g.dx();
  FieldEngine eng(g, InitialFieldData{}, dt, 1.0, FieldSolverKind::representation);
  std::vector<double> rho(161);
  for (int i = 0; i < 161; ++i) rho[static_cast<std::size_t>(i)] = std::exp(-4.0 * g.x(i) * g.x(i));
  FieldState s;
  for (int n = 0; n < 20; ++n) s = eng.advance(rho);
  CHECK(s.u[80] < 0.0);
  CHECK(s.ux[70] < 0.0);  // u decreases toward the centre from the left

  // A positive ∂ₓu pushes momenta down.
  const SpatialGrid1D x(-3, 3, 61), v(-3, 3, 121);
  VlasovState f(InitialParticleData::bump(0.1, 1.0, 1.0), x, v);
  for (int n = 0; n < 10; ++n) f.step([](double, double) { return 0.5; }, 0.05);
  double m0 = 0.0, m1 = 0.0;
  for (int i = 0; i < x.size(); ++i)
    for (int j = 0; j < v.size(); ++j) {
      m0 += f.f().at(i, j);
      m1 += f.f().at(i, j) * v.x(j);
    }
  CHECK(m1 / m0 == doctest::Approx(-0.25).epsilon(1e-3));
}

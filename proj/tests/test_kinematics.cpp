#include <cmath>

#include "doctest.h"
#include "vkg/kinematics.hpp"

using namespace vkg;

TEST_CASE("hat_v values") {
  CHECK(hat_v(Vec<3>{0, 0, 0}) == Vec<3>{0, 0, 0});
  const auto w = hat_v(Vec<3>{3, 0, 0});
  CHECK(w[0] == doctest::Approx(3.0 / std::sqrt(10.0)).epsilon(1e-15));
  CHECK(w[0] == doctest::Approx(0.948683).epsilon(1e-6));
  CHECK(w[1] == 0.0);
  CHECK(hat_v(1.0) == doctest::Approx(0.707107).epsilon(1e-6));
  for (double v : {1e3, 1e6, -1e7}) CHECK(std::abs(hat_v(v)) < 1.0);
}

TEST_CASE("hat_v_jacobian") {
  const auto id = hat_v_jacobian(Vec<3>{0, 0, 0});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(id[i][j] == (i == j ? 1.0 : 0.0));

  const Vec<3> v{0.7, -1.3, 2.1};
  const auto J = hat_v_jacobian(v);
  const double h = 1e-5;
  for (int j = 0; j < 3; ++j) {
    Vec<3> p = v, m = v;
    p[j] += h;
    m[j] -= h;
    const auto wp = hat_v(p), wm = hat_v(m);
    for (int i = 0; i < 3; ++i) CHECK(std::abs((wp[i] - wm[i]) / (2 * h) - J[i][j]) < 1e-8);
  }
  // Along v: J v = (1+|v|²)^(-3/2) v.
  const double g2 = 1.0 + dot(v, v);
  for (int i = 0; i < 3; ++i) {
    double jv = 0.0;
    for (int k = 0; k < 3; ++k) jv += J[i][k] * v[k];
    CHECK(jv == doctest::Approx(v[i] / (g2 * std::sqrt(g2))).epsilon(1e-14));
  }
  CHECK(hat_v_derivative(0.0) == 1.0);
}

TEST_CASE("free streaming and constant force are exact") {
  CharacteristicState<1> z0{{0.3}, {2.0}, 0.5};
  const auto r = advance_characteristics(z0, zero_force<1>(), 2.0, 0.1);
  CHECK(r.end.x[0] == doctest::Approx(0.3 + hat_v(2.0) * 1.5).epsilon(1e-14));
  CHECK(r.end.v[0] == 2.0);

  ForceField<1> g;
  g.gradient = [](double, const Vec<1>&) { return Vec<1>{0.4}; };
  g.hessian = [](double, const Vec<1>&) { return Mat<1>{}; };
  const auto c = advance_characteristics(z0, g, 1.7, 0.05);
  CHECK(c.end.v[0] == doctest::Approx(2.0 - 0.4 * 1.2).epsilon(1e-14));

  // backward integration inverts
  const auto back = advance_characteristics(c.end, g, 0.5, 0.05);
  CHECK(back.end.x[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(back.end.v[0] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("variational matrix") {
  CharacteristicState<1> z0{{0.2}, {0.8}, 0.0};
  const auto free = advance_characteristics(z0, zero_force<1>(), 1.5, 0.01, true);
  const auto& J = *free.jacobian;
  CHECK(J[0][0] == doctest::Approx(1.0));
  CHECK(J[0][1] == doctest::Approx(1.5 * hat_v_derivative(0.8)).epsilon(1e-12));
  CHECK(J[1][0] == doctest::Approx(0.0));
  CHECK(J[1][1] == doctest::Approx(1.0));
  CHECK(flow_jacobian_fd_check(z0, zero_force<1>(), 1.5, 0.01) < 1e-6);
  const auto still = advance_characteristics(z0, zero_force<1>(), 0.0, 0.01, true);
  CHECK(*still.jacobian == identity_matrix<2>());
  CHECK(flow_jacobian_fd_check(z0, zero_force<1>(), 0.0, 0.01) < 1e-10);

  ForceField<1> harmonic;  // u = x²/2
  harmonic.gradient = [](double, const Vec<1>& x) { return Vec<1>{x[0]}; };
  harmonic.hessian = [](double, const Vec<1>&) { return Mat<1>{{{1.0}}}; };
  CHECK(flow_jacobian_fd_check(z0, harmonic, 1.0, 1e-3) < 1e-5);
  const auto h = advance_characteristics(z0, harmonic, 1.0, 1e-3, true);
  CHECK(std::abs(determinant(*h.jacobian) - 1.0) < 1e-8);
}

TEST_CASE("flow composition") {
  ForceField<1> f;
  f.gradient = [](double t, const Vec<1>& x) { return Vec<1>{0.5 * std::sin(x[0]) * std::cos(t)}; };
  f.hessian = [](double t, const Vec<1>& x) { return Mat<1>{{{0.5 * std::cos(x[0]) * std::cos(t)}}}; };
  CharacteristicState<1> z{{0.1}, {-0.4}, 0.0};
  const auto direct = advance_characteristics(z, f, 1.0, 1e-3).end;
  const auto mid = advance_characteristics(z, f, 0.37, 1e-3).end;
  const auto two = advance_characteristics(mid, f, 1.0, 1e-3).end;
  CHECK(std::abs(direct.x[0] - two.x[0]) < 1e-10);
  CHECK(std::abs(direct.v[0] - two.v[0]) < 1e-10);
}

TEST_CASE("non-finite field is reported") {
  ForceField<1> bad;
  bad.gradient = [](double, const Vec<1>&) { return Vec<1>{NAN}; };
  bad.hessian = [](double, const Vec<1>&) { return Mat<1>{}; };
  CHECK_THROWS_AS(advance_characteristics(CharacteristicState<1>{}, bad, 1.0, 0.1), IntegrationFailure);
  CHECK_THROWS_AS(advance_characteristics(CharacteristicState<1>{}, bad, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("determinant") {
  Mat<3> m{{{2, 1, 0}, {0, 3, 1}, {1, 0, 1}}};
  CHECK(determinant(m) == doctest::Approx(7.0));
}

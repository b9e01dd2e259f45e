#include <cmath>

#include "doctest.h"
#include "vkg/st_operators.hpp"

using namespace vkg;

TEST_CASE("linear functions are reproduced") {
  const Vec3 v{0.6, -0.2, 1.1};
  const double s3 = 1.0 / std::sqrt(3.0);
  const Vec3 w{s3, s3, -s3};
  const SpaceTimePoint p{0.4, {0.1, 0.2, -0.3}};
  const auto d = st_derivatives([](double t, const Vec3&) { return t; }, v, w, p, 1e-3);
  CHECK(d.s == doctest::Approx(1.0));
  for (int j = 0; j < 3; ++j) CHECK(d.t[j] == doctest::Approx(-w[j]));
  CHECK(d.decomposed[kTime] == doctest::Approx(1.0).epsilon(1e-12));
  for (int k = 0; k < 3; ++k) CHECK(std::abs(d.decomposed[k]) < 1e-12);

  const auto e = st_derivatives([](double, const Vec3& x) { return x[1]; }, v, w, p, 1e-3);
  CHECK(e.decomposed[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(e.decomposed[kTime]) < 1e-12);
}

TEST_CASE("second-order residual") {
  const SpaceTimeFunction g = [](double t, const Vec3& x) {
    return std::sin(t) * std::exp(-dot(x, x));
  };
  const Vec3 v{1.0, 0.5, -0.3};
  const Vec3 w{0.0, 0.6, 0.8};
  const SpaceTimePoint p{0.7, {0.3, -0.4, 0.2}};
  const double r1 = st_decomposition_residual(g, v, w, p, 1e-2);
  const double r2 = st_decomposition_residual(g, v, w, p, 5e-3);
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.1));
  // coefficient rows reproduce ∂ with exact S, T of a linear function
  const auto c = st_coefficients(v, w);
  CHECK(c[kTime][0] > 0.0);
}

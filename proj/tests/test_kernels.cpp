#include <cmath>
#include <numbers>

#include "doctest.h"
#include "vkg/kernels3d.hpp"
#include "vkg/random.hpp"
#include "vkg/sphere_quadrature.hpp"

using namespace vkg;

namespace {

using LD = long double;

// Second implementation of the kernel formulas as displayed, in long double.
// Each evaluation also returns the sum of the absolute values of its terms,
// which bounds the round-off of any double evaluation of the same sum.
struct Value {
  LD v, scale;
};

struct Oracle {
  LD w[3], vh[3], g2, d, wv, vv;
  Oracle(const Vec3& omega, const Vec3& v) {
    g2 = 1.0L;
    for (int i = 0; i < 3; ++i) g2 += static_cast<LD>(v[i]) * v[i];
    const LD g = std::sqrt(g2);
    wv = vv = 0.0L;
    for (int i = 0; i < 3; ++i) {
      w[i] = omega[i];
      vh[i] = v[i] / g;
      wv += w[i] * vh[i];
      vv += vh[i] * vh[i];
    }
    d = 1.0L + wv;
  }
  static Value sum(std::initializer_list<LD> terms) {
    Value r{0.0L, 0.0L};
    for (LD t : terms) {
      r.v += t;
      r.scale += std::abs(t);
    }
    return r;
  }
  Value a(int k) const { return sum({-vh[k] / d, -w[k] / (g2 * d * d)}); }
  Value at() const { return sum({vv / (d * d), wv / (d * d)}); }
  Value akl(int k, int l) const {
    return sum({-3.0L * (w[l] * vh[k] + w[k] * vh[l]) / (g2 * d * d * d),
                -3.0L * w[k] * w[l] / (g2 * g2 * d * d * d * d), -2.0L * vh[k] * vh[l] / (d * d),
                (k == l ? 1.0L : 0.0L) / (g2 * d * d)});
  }
  Value atk(int k) const {
    return sum({2.0L * vh[k] * (wv + vv) / (d * d * d), 3.0L * w[k] * (wv + vv) / (g2 * d * d * d * d),
                -vh[k] / (g2 * d * d * d)});
  }
  Value att() const {
    const LD d4 = d * d * d * d;
    return sum({3.0L * vv * vv / d4, -wv * wv * vv / d4, -vv / d4, 3.0L * wv * wv / d4,
                4.0L * wv * vv / d4});
  }
};

void close(double got, Value want) {
  const double scale = static_cast<double>(want.scale);
  CHECK(std::abs(got - static_cast<double>(want.v)) <= 1e-13 * std::max(1.0, scale));
}

}  // namespace

TEST_CASE("query validation") {
  CHECK_THROWS_AS(KernelQuery(Vec3{1.1, 0, 0}, Vec3{0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(KernelQuery(Vec3{1, 0, 0}, Vec3{NAN, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(kernel_a_spatial(3, KernelQuery(Vec3{1, 0, 0}, Vec3{})), std::invalid_argument);
}

TEST_CASE("kernels at v = 0") {
  Sampler s(11);
  for (int n = 0; n < 20; ++n) {
    const Vec3 w = s.direction();
    const KernelQuery q(w, Vec3{0, 0, 0});
    for (int k = 0; k < 3; ++k) {
      CHECK(kernel_a_spatial(k, q) == doctest::Approx(-w[k]).epsilon(1e-15));
      for (int l = 0; l < 3; ++l)
        CHECK(std::abs(kernel_a_second(k, l, q) - ((k == l) - 3.0 * w[k] * w[l])) < 1e-15);
    }
    CHECK(kernel_a_time(q) == 0.0);
    CHECK(kernel_a_second(kTime, kTime, q) == doctest::Approx(0.0));
  }
}

TEST_CASE("closed forms in special geometries") {
  // ω ⊥ v̂ and axis 2 orthogonal to both
  const Vec3 v{1.5, 0, 0};
  const Vec3 w{0, 1, 0};
  const KernelQuery q(w, v);
  CHECK(kernel_a_spatial(2, q) == 0.0);
  CHECK(kernel_a_spatial(1, q) == doctest::Approx(-1.0 / (1.0 + 2.25)).epsilon(1e-15));
  // ω ∥ v̂: a^t = w/(1+w)
  const KernelQuery p(Vec3{1, 0, 0}, v);
  const double h = hat_v(1.5);
  CHECK(kernel_a_time(p) == doctest::Approx(h / (1.0 + h)).epsilon(1e-14));
}

TEST_CASE("random queries against the long double oracle") {
  Sampler s(20261015);
  for (int n = 0; n < 500; ++n) {
    const Vec3 w = s.direction();
    const Vec3 v = s.ball(3.0);
    const KernelQuery q(w, v);
    const Oracle o(w, v);
    close(kernel_a_time(q), o.at());
    close(kernel_a_second(kTime, kTime, q), o.att());
    for (int k = 0; k < 3; ++k) {
      close(kernel_a_spatial(k, q), o.a(k));
      close(kernel_a_second(kTime, k, q), o.atk(k));
      close(kernel_a_second(k, kTime, q), o.atk(k));
      for (int l = 0; l < 3; ++l) close(kernel_a_second(k, l, q), o.akl(k, l));
    }
  }
}

TEST_CASE("sphere quadrature") {
  CHECK(sphere_average([](const Vec3&) { return 1.0; }, Vec3{}) ==
        doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-14));
  CHECK(sphere_average([](const Vec3&) { return 1.0; }, Vec3{5, -2, 1}) ==
        doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-14));
  CHECK(sphere_average([](const Vec3& w) { return w[0] * w[0]; }, Vec3{1, 1, 0}) ==
        doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-13));
  CHECK_THROWS_AS(SphereQuadrature(Vec3{}, 3), std::invalid_argument);
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) {
      const auto f = [&](const Vec3& w) { return kernel_a_second(k, l, KernelQuery(w, Vec3{})); };
      CHECK(std::abs(sphere_average(f, Vec3{})) < 1e-14);
    }
}

TEST_CASE("cancellation at v = (2, -1, 0.5)") {
  const Vec3 v{2.0, -1.0, 0.5};
  for (int k = 0; k < 4; ++k)
    for (int l = k; l < 4; ++l) {
      const auto f = [&](const Vec3& w) { return kernel_a_second(k, l, KernelQuery(w, v)); };
      CHECK(std::abs(sphere_average(f, v)) < 1e-8);
    }
}

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "vkg/bessel.hpp"

using namespace vkg;

namespace {

// J_k(ξ)/ξ^k = Σ_m (-1)^m (ξ/2)^{2m} / (2^k m! (m+k)!), 40 terms in long double.
long double series(int k, long double xi) {
  long double term = 1.0L;
  for (int j = 1; j <= k; ++j) term /= 2.0L * j;
  long double sum = term;
  const long double q = xi * xi / 4.0L;
  for (int m = 1; m < 40; ++m) {
    term *= -q / (static_cast<long double>(m) * (m + k));
    sum += term;
  }
  return sum;
}

}  // namespace

TEST_CASE("values at zero") {
  CHECK(bessel_ratio(0, 0.0) == 1.0);
  CHECK(bessel_ratio(1, 0.0) == 0.5);
  CHECK(bessel_ratio(2, 0.0) == 0.125);
  CHECK(bessel_ratio(3, 0.0) == doctest::Approx(1.0 / 48.0).epsilon(1e-15));
  CHECK(bessel_ratio(1, 1.0) == doctest::Approx(0.4400506).epsilon(1e-7));
}

TEST_CASE("power series oracle") {
  for (int k = 0; k <= 3; ++k)
    for (double xi = 0.0; xi <= 12.0; xi += 0.173) {
      const double ref = static_cast<double>(series(k, xi));
      CHECK(std::abs(bessel_ratio(k, xi) - ref) < 1e-13);
      CHECK(std::abs(bessel_ratio_sq(k, xi * xi) - ref) < 1e-13);
    }
}

TEST_CASE("large arguments against the standard library") {
  for (int k = 0; k <= 3; ++k)
    for (double xi = 8.5; xi < 60.0; xi += 1.37) {
      const double ref = std::cyl_bessel_j(static_cast<double>(k), xi) / std::pow(xi, k);
      CHECK(std::abs(bessel_ratio(k, xi) - ref) < 1e-13);
    }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(bessel_ratio(1, -0.5), std::domain_error);
  CHECK_THROWS_AS(bessel_ratio(4, 1.0), std::domain_error);
}

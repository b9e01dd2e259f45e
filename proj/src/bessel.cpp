#include "vkg/bessel.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vkg {

namespace {

void check_order(int k) {
  if (k < 0 || k > kMaxBesselOrder)
    throw std::domain_error("bessel_ratio: unsupported order " + std::to_string(k));
}

// Σ_m (-1)^m / (m! (m+k)!) (z/4)^m / 2^k, the ascending series divided by ξ^k.
double series(int k, double xi_sq) {
  const double q = 0.25 * xi_sq;
  double term = 1.0;
  for (int j = 1; j <= k; ++j) term /= 2.0 * j;
  double sum = term;
  for (int m = 1; m < kBesselSeriesTerms; ++m) {
    term *= -q / (static_cast<double>(m) * static_cast<double>(m + k));
    sum += term;
  }
  return sum;
}

}  // namespace

double bessel_ratio_sq(int k, double xi_sq) {
  check_order(k);
  if (xi_sq < 0.0 || std::isnan(xi_sq)) throw std::domain_error("bessel_ratio: negative argument");
  if (xi_sq < kBesselSeriesSwitch * kBesselSeriesSwitch) return series(k, xi_sq);
  const double xi = std::sqrt(xi_sq);
  return std::cyl_bessel_j(static_cast<double>(k), xi) / std::pow(xi, k);
}

double bessel_ratio(int k, double xi) {
  check_order(k);
  if (xi < 0.0 || std::isnan(xi)) throw std::domain_error("bessel_ratio: negative argument");
  if (xi < kBesselSeriesSwitch) return series(k, xi * xi);
  return std::cyl_bessel_j(static_cast<double>(k), xi) / std::pow(xi, k);
}

}  // namespace vkg

#pragma once

// Seeded sampling with a fixed mapping from engine output to doubles, so
// samples are identical across standard library implementations (the
// std distributions are not specified bit-for-bit).

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "vkg/kinematics.hpp"

namespace vkg {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  /// uniform in [0, 1) with 53 random bits
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// uniform on the unit sphere
  Vec<3> direction() {
    const double z = uniform(-1.0, 1.0);
    const double phi = uniform(0.0, 2.0 * std::numbers::pi);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    Vec<3> w{r * std::cos(phi), r * std::sin(phi), z};
    const double n = norm(w);
    for (double& c : w) c /= n;
    return w;
  }

  /// uniform in the ball of radius R
  Vec<3> ball(double R) {
    const double r = R * std::cbrt(uniform());
    Vec<3> w = direction();
    for (double& c : w) c *= r;
    return w;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace vkg

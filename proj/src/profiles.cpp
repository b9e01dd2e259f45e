#include "vkg/profiles.hpp"

#include <cmath>

#include "vkg/errors.hpp"

namespace vkg {

AnalyticProfile AnalyticProfile::zero() {
  return {[](double) { return 0.0; }, [](double) { return 0.0; }, 0.0, 0.0};
}

AnalyticProfile AnalyticProfile::gaussian(double amplitude, double width, double center) {
  if (!(width > 0.0)) throw ConfigError("gaussian width must be positive");
  return {[=](double x) {
            const double s = (x - center) / width;
            return amplitude * std::exp(-s * s);
          },
          [=](double x) {
            const double s = (x - center) / width;
            return -2.0 * s / width * amplitude * std::exp(-s * s);
          },
          center, 6.2 * width};
}

AnalyticProfile AnalyticProfile::bump(double amplitude, double radius, double center) {
  if (!(radius > 0.0)) throw ConfigError("bump radius must be positive");
  return {[=](double x) {
            const double s = (x - center) / radius;
            const double b = 1.0 - s * s;
            return b > 0.0 ? amplitude * b * b * b * b : 0.0;
          },
          [=](double x) {
            const double s = (x - center) / radius;
            const double b = 1.0 - s * s;
            return b > 0.0 ? amplitude * 4.0 * b * b * b * (-2.0 * s / radius) : 0.0;
          },
          center, radius};
}

AnalyticProfile AnalyticProfile::cosine(double amplitude, double wavenumber) {
  return {[=](double x) { return amplitude * std::cos(wavenumber * x); },
          [=](double x) { return -amplitude * wavenumber * std::sin(wavenumber * x); }, 0.0,
          std::numeric_limits<double>::infinity()};
}

InitialParticleData InitialParticleData::zero() {
  return {[](double, double) { return 0.0; }, 0.0, 0.0, 0.0};
}

InitialParticleData InitialParticleData::bump(double amplitude, double radius_x, double radius_v,
                                              double x_center, double v_center) {
  if (!(radius_x > 0.0) || !(radius_v > 0.0)) throw ConfigError("bump radii must be positive");
  if (amplitude < 0.0) throw ConfigError("particle density must be non-negative");
  auto density = [=](double x, double v) {
    const double sx = (x - x_center) / radius_x;
    const double sv = (v - v_center) / radius_v;
    const double bx = 1.0 - sx * sx;
    const double bv = 1.0 - sv * sv;
    if (bx <= 0.0 || bv <= 0.0) return 0.0;
    return amplitude * bx * bx * bv * bv;
  };
  return {density, std::abs(x_center) + radius_x, std::abs(v_center) + radius_v, amplitude};
}

}  // namespace vkg

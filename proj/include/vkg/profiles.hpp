#pragma once

// Closed-form initial data. Every profile knows the interval outside of
// which it vanishes (bumps) or drops below double-precision noise
// (Gaussians); field solvers size their padding from it.

#include <functional>
#include <limits>
#include <string>

namespace vkg {

struct AnalyticProfile {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  double center = 0.0;
  /// +inf for profiles that do not decay (cosines)
  double support_radius = 0.0;

  double operator()(double x) const { return value(x); }
  bool compact() const { return support_radius < std::numeric_limits<double>::infinity(); }
  double support_lo() const { return center - support_radius; }
  double support_hi() const { return center + support_radius; }

  static AnalyticProfile zero();
  /// A exp(-((x-c)/w)²); treated as vanishing beyond 6.2 w.
  static AnalyticProfile gaussian(double amplitude, double width, double center = 0.0);
  /// A (1 - ((x-c)/R)²)₊⁴, a C³ bump.
  static AnalyticProfile bump(double amplitude, double radius, double center = 0.0);
  /// A cos(k x); periodic grids only.
  static AnalyticProfile cosine(double amplitude, double wavenumber);
};

struct InitialFieldData {
  AnalyticProfile u1 = AnalyticProfile::zero();
  AnalyticProfile u2 = AnalyticProfile::zero();
};

/// Phase-space initial density f̊(x, v) ≥ 0 with compact support.
struct InitialParticleData {
  std::function<double(double, double)> density;
  /// R̊: f̊(x, ·) = 0 for |x| ≥ spatial_radius
  double spatial_radius = 0.0;
  /// P̊: f̊(·, v) = 0 for |v| ≥ momentum_radius
  double momentum_radius = 0.0;
  /// ‖f̊‖∞
  double sup_norm = 0.0;

  static InitialParticleData zero();
  /// A (1 - ((x-xc)/R)²)₊² (1 - ((v-vc)/P)²)₊², a C¹ bump.
  static InitialParticleData bump(double amplitude, double radius_x, double radius_v,
                                  double x_center = 0.0, double v_center = 0.0);
};

}  // namespace vkg

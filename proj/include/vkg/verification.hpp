#pragma once

// Property checks shared by the CLI verification modes and the acceptance
// tests. Each returns measured numbers plus a verdict; nothing here throws on
// a failed property.

#include <cstdint>
#include <string>
#include <vector>

#include "vkg/kernels3d.hpp"

namespace vkg {

/// (k, ℓ) pairs of the ten distinct second-order kernels.
std::vector<std::pair<int, int>> second_order_kernel_indices();
std::string kernel_name(int k, int l);

struct KernelSample {
  Vec3 v{};
  /// largest |sphere average| over the ten kernels at the base order
  double worst_average = 0.0;
  /// the same at twice the order
  double worst_average_doubled = 0.0;
  /// every kernel either decreased on doubling or sits below its round-off floor
  bool converging = true;
};

struct KernelCancellationReport {
  int order = 0;
  double tolerance = 0.0;
  std::vector<KernelSample> samples;
  double worst = 0.0;
  bool pass = false;
};

/// Round-off floor of a sphere integral: 1e-12 times the integral of |kernel|.
inline constexpr double kRoundoffFloor = 1e-12;

KernelCancellationReport verify_kernel_cancellation(std::uint64_t seed, int samples = 100,
                                                    double max_speed = 10.0, int order = 64,
                                                    double tolerance = 1e-8);

struct MomentReport {
  int samples = 0;
  /// max |numeric - exact| / max(|exact|, 4π)
  double worst_relative = 0.0;
  bool pass = false;
};

MomentReport verify_moment_identities(std::uint64_t seed, int samples = 20, double max_speed = 10.0,
                                      int order = 64, double tolerance = 1e-8);

struct PointwiseBoundReport {
  long samples = 0;
  long violations = 0;
  /// max of (1/(1+ω·v̂)) / (2(1+|v|²))
  double worst_ratio = 0.0;
  bool pass = false;
};

PointwiseBoundReport verify_pointwise_bound(std::uint64_t seed, long samples = 100000,
                                            double max_speed = 50.0);

struct CrossValLevel {
  int n_x = 0;
  double dx = 0.0;
  double dt = 0.0;
  /// ‖u_rep - u_fd‖₂ / ‖u_fd‖₂ at T
  double relative_difference = 0.0;
  /// relative L² errors of each solver against the manufactured solution
  double representation_error = 0.0;
  double fd_error = 0.0;
};

struct CrossValReport {
  std::vector<CrossValLevel> levels;
  /// observed orders of the difference between consecutive levels
  std::vector<double> orders;
  double tolerance = 1e-2;
  double min_order = 1.8;
  bool pass = false;
};

/// Manufactured field u* = e^{-x²} cos t with ρ* = -(2 - 4x²) e^{-x²} cos t,
/// solved on [-half_width, half_width] with dt = Δx/2 by the representation
/// (homogeneous + retarded) and leapfrog solvers.
CrossValReport field_crossvalidation(const std::vector<int>& n_x_levels = {128, 256, 512},
                                     double half_width = 8.0, double T = 2.0);

struct DispersionEntry {
  double k = 0.0;
  double omega = 0.0;
  double spectral_relative_error = 0.0;
  std::vector<double> fd_relative_errors;
  std::vector<double> fd_orders;
};

struct DispersionReport {
  std::vector<int> fd_levels;
  std::vector<DispersionEntry> entries;
  bool pass = false;
};

/// Frequencies of cos(kx) data on a 2π-periodic grid: spectral solver to
/// 1e-10 relative, leapfrog with observed order ≥ 1.8.
DispersionReport dispersion_check(const std::vector<double>& ks = {1.0, 2.0, 4.0},
                                  const std::vector<int>& fd_levels = {64, 128, 256});

struct StEntry {
  std::string function;
  double h = 0.0;
  double spatial_residual = 0.0;
  double spatial_residual_half = 0.0;
  double time_residual = 0.0;
  double time_residual_half = 0.0;
  double spatial_ratio() const { return spatial_residual / spatial_residual_half; }
  double time_ratio() const { return time_residual / time_residual_half; }
};

struct StReport {
  std::vector<StEntry> entries;
  bool pass = false;
};

/// Residual ratio of both decomposition identities per halving of h on three
/// smooth test functions; pass if every ratio lies in [3.5, 4.5].
StReport st_convergence(double h = 1e-2);

struct FlowEntry {
  std::string field;
  double composition_error = 0.0;
  double roundtrip_error = 0.0;
  double jacobian_deviation = 0.0;
  double determinant_error = 0.0;
};

struct FlowReport {
  double dt = 0.0;
  std::vector<FlowEntry> entries;
  bool pass = false;
};

/// Flow composition, inverse round trip, variational matrix and unit
/// determinant over unit time on three 1D test fields.
FlowReport flow_identities(double dt = 1e-3);

}  // namespace vkg

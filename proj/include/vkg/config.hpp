#pragma once

// Scenario configuration: a JSON document with a schema_version field.
// Unknown keys are rejected so that typos surface as usage errors.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vkg/coupled.hpp"

namespace vkg {

inline constexpr int kSchemaVersion = 1;

enum class Mode { coupled_1d, picard_1d, kernel_verify_3d, field_crossval_1d };
const char* to_string(Mode m);

/// Named analytic family for ů₁ / ů₂: zero, gaussian, bump, cosine.
struct ProfileSpec {
  std::string family = "zero";
  double amplitude = 0.0;
  /// Gaussian width or bump radius
  double width = 1.0;
  double center = 0.0;
  double wavenumber = 1.0;
  bool operator==(const ProfileSpec&) const = default;
};

/// Named family for f̊: zero or bump.
struct ParticleSpec {
  std::string family = "bump";
  double amplitude = 0.1;
  double radius_x = 1.0;
  double radius_v = 1.0;
  double x_center = 0.0;
  double v_center = 0.0;
  bool operator==(const ParticleSpec&) const = default;
};

struct GridSpec {
  double dx = 0.03;
  double dv = 0.03;
  /// half widths of the symmetric (x, v) box; absent means sized from the
  /// a-priori support bounds
  std::optional<double> x_max;
  std::optional<double> v_max;
  bool operator==(const GridSpec&) const = default;
};

struct PicardSpec {
  int max_iterations = 25;
  double relative_tolerance = 1e-6;
  bool operator==(const PicardSpec&) const = default;
};

struct KernelVerifySpec {
  int samples = 100;
  double max_speed = 10.0;
  int order = 64;
  double tolerance = 1e-8;
  int moment_samples = 20;
  long bound_samples = 100000;
  double bound_max_speed = 50.0;
  bool operator==(const KernelVerifySpec&) const = default;
};

struct CrossValSpec {
  std::vector<int> n_x_levels{128, 256, 512};
  double half_width = 8.0;
  double horizon = 2.0;
  bool operator==(const CrossValSpec&) const = default;
};

struct ScenarioConfig {
  int schema_version = kSchemaVersion;
  Mode mode = Mode::coupled_1d;
  ParticleSpec particles;
  ProfileSpec u1{"gaussian", 0.25, 1.0, 0.0, 1.0};
  ProfileSpec u2;
  GridSpec grid;
  double horizon = 4.0;
  /// 0 means dx/2
  double dt = 0.0;
  FieldSolverKind field_solver = FieldSolverKind::representation;
  Tolerances tolerances;
  PicardSpec picard;
  KernelVerifySpec kernel_verify;
  CrossValSpec crossval;
  std::string output = "vkg-out";
  int snapshot_every = 0;
  std::uint64_t seed = 20261015;
  int workers = 0;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Throws ConfigError naming the offending field.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);
std::string serialize_config(const ScenarioConfig& config);

/// Violations as "field: message"; empty iff the configuration is runnable.
std::vector<std::string> validate_config(const ScenarioConfig& config);

AnalyticProfile make_profile(const ProfileSpec& spec);
InitialParticleData make_particles(const ParticleSpec& spec);

/// Grids, time step and data for the coupled and Picard modes. Node counts
/// are odd so that the box is symmetric about zero.
CoupledProblem make_problem(const ScenarioConfig& config);

}  // namespace vkg

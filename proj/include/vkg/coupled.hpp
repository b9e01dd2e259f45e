#pragma once

// Coupled 1D evolution of particles and field.
//
// Step t_n → t_{n+1}:
//   1. ρ(t_n) = ∫ f(t_n) dv is handed to the field solver;
//   2. the field solver returns u, ∂ₓu, ∂ₜu at t_{n+1} (the retarded integral
//      gives ρ(t_{n+1}) zero weight, and leapfrog only needs ρ(t_n));
//   3. f is transported with ∂ₓu linear in time between t_n and t_{n+1}.
// The Picard driver uses the same three pieces, so its fixed point is this
// discrete solution.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vkg/field_history.hpp"
#include "vkg/kg_fd.hpp"
#include "vkg/kg_homogeneous.hpp"
#include "vkg/phase_grid.hpp"
#include "vkg/retarded.hpp"
#include "vkg/vlasov1d.hpp"

namespace vkg {

enum class FieldSolverKind { representation, finite_difference };

struct FieldState {
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> ux;
  std::vector<double> ut;
  bool boundary_warning = false;
};

/// Field on the particle x-grid, advanced one ρ slice at a time.
class FieldEngine {
 public:
  FieldEngine(const SpatialGrid1D& grid, const InitialFieldData& data, double dt, double horizon,
              FieldSolverKind kind);
  ~FieldEngine();
  FieldEngine(FieldEngine&&) noexcept;
  FieldEngine& operator=(FieldEngine&&) noexcept;

  /// The field at t = 0 (the initial data).
  FieldState initial() const;
  /// Takes ρ(t_n) with n = steps(); returns the field at t_{n+1}.
  FieldState advance(std::vector<double> rho);
  std::size_t steps() const { return steps_; }
  const FieldHistory* history() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::size_t steps_ = 0;
};

/// Dirichlet grid for the leapfrog field: the x-grid widened by horizon/2
/// plus the field data support so reflections never return within the horizon.
SpatialGrid1D fd_field_grid(const SpatialGrid1D& grid, const InitialFieldData& data, double horizon);

enum class Check { pass, fail, not_applicable };
const char* to_string(Check c);

struct Tolerances {
  double max_principle = 1e-3;
  double mass_drift = 1e-3;
  bool operator==(const Tolerances&) const = default;
};

struct DiagnosticsRow {
  std::size_t step = 0;
  double t = 0.0;
  /// running sup of |v| over the support
  double momentum_support = 0.0;
  /// max |x| over the support
  double spatial_support = 0.0;
  double rho_l1 = 0.0;
  double mass_drift = 0.0;
  double f_sup = 0.0;
  double ux_sup = 0.0;
  /// ∫₀ᵗ ‖∂ₓu‖∞ ds by the trapezoid rule over the steps
  double ux_integral = 0.0;
  double rho_max = 0.0;
  /// 2‖f̊‖∞ P(t)
  double rho_bound = 0.0;
  Check max_principle = Check::not_applicable;
  Check mass = Check::not_applicable;
  Check support = Check::not_applicable;
  Check density_bound = Check::not_applicable;
  Check momentum_bound = Check::not_applicable;
};

struct DiagnosticsTimeline {
  std::vector<DiagnosticsRow> rows;
  double initial_momentum = 0.0;  // P̊
  double initial_spatial_radius = 0.0;
  double initial_sup = 0.0;
  double initial_mass = 0.0;
  double v_capacity = 0.0;  // largest |v| the grid can hold
  double x_capacity = 0.0;
  double dx = 0.0;
  double dv = 0.0;
  bool blow_up = false;
  std::string blow_up_reason;
  bool boundary_warning = false;
};

/// Appends the row for the current state and evaluates its checks.
class DiagnosticsRecorder {
 public:
  DiagnosticsRecorder(const InitialParticleData& data, const PhaseGrid& f0, Tolerances tol);
  void record(std::size_t step, double t, const PhaseGrid& f, const std::vector<double>& rho,
              const std::vector<double>& ux);
  DiagnosticsTimeline& timeline() { return tl_; }
  const DiagnosticsTimeline& timeline() const { return tl_; }

 private:
  InitialParticleData data_;
  Tolerances tol_;
  DiagnosticsTimeline tl_;
  double running_p_ = 0.0;
  double prev_ux_sup_ = 0.0;
  double prev_t_ = 0.0;
};

struct CoupledProblem {
  InitialParticleData particles = InitialParticleData::zero();
  InitialFieldData field;
  SpatialGrid1D x_axis{-1.0, 1.0, 2};
  SpatialGrid1D v_axis{-1.0, 1.0, 2};
  double T = 1.0;
  double dt = 0.01;
  FieldSolverKind solver = FieldSolverKind::representation;
  Tolerances tolerances;
};

/// Number of steps and the step actually used (T divided evenly).
std::pair<std::size_t, double> time_steps(double T, double dt);

struct Snapshot {
  std::size_t step;
  double t;
  const PhaseGrid& f;
  const FieldState& field;
};
using SnapshotSink = std::function<void(const Snapshot&)>;

struct CoupledResult {
  DiagnosticsTimeline timeline;
  PhaseGrid f;
  FieldState field;
  /// ∂ₓu at every step, kept when requested
  std::vector<std::vector<double>> ux_trajectory;
};

/// Runs to T. A support escape ends the run early with timeline.blow_up set.
CoupledResult run_coupled(const CoupledProblem& problem, const SnapshotSink& sink = {},
                          std::size_t snapshot_every = 0, bool keep_ux = false);

struct ContinuationStatus {
  bool ok = true;
  bool inequality_holds = true;
  bool suspect = false;
  double max_momentum = 0.0;
  double max_ux_integral = 0.0;
  /// worst P(t) - P̊ - ∫‖∂ₓu‖ over the timeline (≤ dv when the inequality holds)
  double worst_excess = 0.0;
  std::string message;
};

/// Joint growth of P(t) and ∫‖∂ₓu‖∞; flags runs approaching grid capacity.
ContinuationStatus continuation_monitor(const DiagnosticsTimeline& timeline);

/// A-priori momentum bound on [0, T]: P' ≤ ‖∂ₓu_hom‖∞ + 2‖f̊‖∞∫₀ᵗP + ‖f̊‖₁t²/8,
/// integrated with measured homogeneous field norms.
double momentum_bound(const InitialParticleData& particles, const InitialFieldData& field,
                      const SpatialGrid1D& x_axis, double T, double f_l1);

struct GridSizing {
  double x_half_width;
  double v_half_width;
  double momentum_bound;
};

/// Symmetric (x, v) box that must contain the support over [0, T]: x from
/// R̊ + T and v from 1.5 times the momentum bound, each plus `margin_cells`.
GridSizing size_grids(const InitialParticleData& particles, const InitialFieldData& field, double T,
                      double dx, double dv, int margin_cells = 4);

}  // namespace vkg

#pragma once

// Picard iteration for the coupled system on [0, T₀]:
//   f⁽ⁿ⁾ transported by the frozen field ∂ₓu⁽ⁿ⁻¹⁾,
//   u⁽ⁿ⁾ solved from the original field data with source -ρ⁽ⁿ⁾,
// starting from f⁽⁰⁾ = f̊ and u⁽⁰⁾ = ů₁, both constant in time.

#include <cstddef>
#include <string>
#include <vector>

#include "vkg/coupled.hpp"

namespace vkg {

struct IterateState {
  std::size_t index = 0;
  std::vector<double> times;
  std::vector<PhaseGrid> f;
  std::vector<std::vector<double>> u;
  std::vector<std::vector<double>> ux;
  /// measured running momentum support, non-decreasing
  std::vector<double> momentum;
  /// ‖∂ₓu⁽ⁿ⁾(t)‖∞ at each time
  std::vector<double> ux_norm;
  bool blow_up = false;
  std::string blow_up_reason;
};

/// Iterate 0.
IterateState initial_iterate(const CoupledProblem& problem);

/// One Picard step from `prev`. A support escape sets blow_up instead of
/// throwing; the trajectories then stop at the last complete time.
IterateState picard_iterate(const IterateState& prev, const CoupledProblem& problem);

struct GapEntry {
  std::size_t n = 0;
  /// sup over t, x of |∂ₓu⁽ⁿ⁾ - ∂ₓu⁽ⁿ⁻¹⁾|
  double ux_gap = 0.0;
  /// sup over t, x, v of |f⁽ⁿ⁾ - f⁽ⁿ⁻¹⁾|
  double f_gap = 0.0;
  /// ux_gap(n) / ux_gap(n-1); 0 for the first entry
  double ratio = 0.0;
  /// running max over iterates k ≤ n of sup_t ‖∂ₓu⁽ᵏ⁾(t)‖∞
  double q = 0.0;
};

/// Throws ConfigError if the iterates live on different grids or times.
GapEntry cauchy_gap(const IterateState& a, const IterateState& b);

struct ConvergenceReport {
  std::vector<GapEntry> entries;
  bool converged = false;
  bool blow_up = false;
  std::string blow_up_reason;
  double relative_tolerance = 1e-6;

  double initial_gap() const { return entries.empty() ? 0.0 : entries.front().ux_gap; }
  /// gap(n+1, n) ≤ gap(n, n-1) for every n ≥ from
  bool monotone_from(std::size_t from) const;
};

struct PicardResult {
  ConvergenceReport report;
  IterateState last;
};

/// Iterates until gap(n, n-1) < rel_tol·gap(1, 0) or n = max_iterations.
/// At least min_iterations iterates are formed so that the tail of the gap
/// sequence is observed even when convergence is fast.
PicardResult run_picard(const CoupledProblem& problem, std::size_t max_iterations = 25,
                        double rel_tol = 1e-6, std::size_t min_iterations = 4);

}  // namespace vkg

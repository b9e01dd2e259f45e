#pragma once

// Runs one configured scenario, writes diagnostics.csv, summary.json and
// snapshots/ into the output directory, and condenses every invariant into a
// named check.

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vkg/config.hpp"
#include "vkg/picard.hpp"

namespace vkg {

struct CheckResult {
  std::string name;
  Check status = Check::not_applicable;
  double measured = 0.0;
  double limit = 0.0;
  std::string detail;
};

struct RunSummary {
  std::string mode;
  std::vector<CheckResult> checks;
  /// scalar results worth reporting, in insertion order
  std::vector<std::pair<std::string, double>> metrics;
  std::optional<ConvergenceReport> convergence;

  bool pass() const;
  const CheckResult* find(const std::string& name) const;
};

/// Timeline checks of a coupled run: max_principle, mass_conservation,
/// support_bound, density_bound, momentum_bound, continuation, coverage.
std::vector<CheckResult> timeline_checks(const DiagnosticsTimeline& timeline,
                                         const Tolerances& tolerances);

/// Human-readable report: one line per check, key metrics, the gap table if
/// present, and a final PASS or FAIL verdict.
std::string emit_report_text(const RunSummary& summary);
std::string emit_report_json(const RunSummary& summary);
/// Inverse of emit_report_json. Throws ConfigError on malformed input.
RunSummary parse_report_json(const std::string& text);

/// Executes the scenario and writes its artifacts under `output_dir`.
/// Progress goes to `log`. Throws ConfigError on an invalid configuration.
RunSummary run_scenario(const ScenarioConfig& config, const std::string& output_dir,
                        std::ostream& log);

}  // namespace vkg

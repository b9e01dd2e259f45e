#include "vkg/field_history.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vkg {

IndexRange nonzero_range(std::span<const double> values) {
  IndexRange r{0, -1};
  const int n = static_cast<int>(values.size());
  int lo = 0;
  while (lo < n && values[static_cast<std::size_t>(lo)] == 0.0) ++lo;
  if (lo == n) return r;
  int hi = n - 1;
  while (values[static_cast<std::size_t>(hi)] == 0.0) --hi;
  return {lo, hi};
}

FieldHistory::FieldHistory(SpatialGrid1D grid, double dt) : grid_(grid), dt_(dt) {
  if (!(dt > 0.0)) throw ConfigError("history time step must be positive");
}

void FieldHistory::append(std::vector<double> rho) {
  if (static_cast<int>(rho.size()) != grid_.size())
    throw ConfigError("density slice does not match the history grid");
  double peak = 0.0;
  for (double r : rho) peak = std::max(peak, std::abs(r));
  const double edge = std::max(std::abs(rho.front()), std::abs(rho.back()));
  if (edge > 1e-12 * peak)
    throw DomainCoverageError("density slice at t=" + std::to_string(coverage_limit()) +
                              " does not vanish at the grid boundary");
  support_.push_back(nonzero_range(rho));
  rho_.push_back(std::move(rho));
}

}  // namespace vkg

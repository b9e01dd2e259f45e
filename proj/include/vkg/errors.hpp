#pragma once

#include <stdexcept>
#include <string>

namespace vkg {

/// Invalid parameters (CFL violation, bad grid, quadrature order too low, ...).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A computation needed data outside the region the grids cover.
class DomainCoverageError : public std::runtime_error {
 public:
  explicit DomainCoverageError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vkg

#pragma once

// CSV output with 17 significant digits, so values survive a text round trip
// bit for bit, and a self-describing binary dump for regression tests:
//
//   "VKGDUMP1"             8 bytes
//   kind                   uint32 (1 field, 2 phase space)
//   array count            uint32
//   time                   float64
//   x_min, x_max           float64
//   n_x                    uint64
//   v_min, v_max           float64 (zero for field dumps)
//   n_v                    uint64  (zero for field dumps)
//   per array: name (16 bytes, NUL padded), length uint64, data float64[]
//
// All integers and floats little-endian.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vkg/coupled.hpp"

namespace vkg {

std::string format_double(double v);

struct DumpArray {
  std::string name;
  std::vector<double> data;
};

struct Dump {
  enum Kind : std::uint32_t { field = 1, phase = 2 };
  std::uint32_t kind = field;
  double time = 0.0;
  double x_min = 0.0;
  double x_max = 0.0;
  std::uint64_t n_x = 0;
  double v_min = 0.0;
  double v_max = 0.0;
  std::uint64_t n_v = 0;
  std::vector<DumpArray> arrays;

  const DumpArray* find(const std::string& name) const;
};

/// Throws std::runtime_error on I/O failure; names longer than 15 bytes are
/// rejected.
void write_dump(const std::string& path, const Dump& dump);
/// Throws std::runtime_error on a malformed file.
Dump read_dump(const std::string& path);

Dump field_dump(const SpatialGrid1D& grid, const FieldState& field);
Dump phase_dump(double t, const PhaseGrid& f);

/// x, u, u_t, u_x
void write_field_csv(std::ostream& out, const SpatialGrid1D& grid, const FieldState& field);
/// x, v, f
void write_phase_csv(std::ostream& out, const PhaseGrid& f);
void write_timeline_csv(std::ostream& out, const DiagnosticsTimeline& timeline);

}  // namespace vkg

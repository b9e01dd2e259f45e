#include "vkg/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace vkg {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const DumpArray* Dump::find(const std::string& name) const {
  for (const auto& a : arrays)
    if (a.name == name) return &a;
  return nullptr;
}

namespace {

constexpr char kMagic[8] = {'V', 'K', 'G', 'D', 'U', 'M', 'P', '1'};

template <class U>
void put_le(std::ostream& out, U v) {
  unsigned char b[sizeof(U)];
  for (std::size_t i = 0; i < sizeof(U); ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), sizeof b);
}

template <class U>
U get_le(std::istream& in) {
  unsigned char b[sizeof(U)];
  if (!in.read(reinterpret_cast<char*>(b), sizeof b)) throw std::runtime_error("dump: truncated file");
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(b[i]) << (8 * i);
  return v;
}

void put_f64(std::ostream& out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v)); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_le<std::uint64_t>(in)); }

}  // namespace

void write_dump(const std::string& path, const Dump& d) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("dump: cannot open '" + path + "' for writing");
  out.write(kMagic, sizeof kMagic);
  put_le<std::uint32_t>(out, d.kind);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(d.arrays.size()));
  put_f64(out, d.time);
  put_f64(out, d.x_min);
  put_f64(out, d.x_max);
  put_le<std::uint64_t>(out, d.n_x);
  put_f64(out, d.v_min);
  put_f64(out, d.v_max);
  put_le<std::uint64_t>(out, d.n_v);
  for (const auto& a : d.arrays) {
    if (a.name.size() > 15) throw std::runtime_error("dump: array name too long: " + a.name);
    char name[16] = {};
    std::memcpy(name, a.name.data(), a.name.size());
    out.write(name, sizeof name);
    put_le<std::uint64_t>(out, a.data.size());
    for (double v : a.data) put_f64(out, v);
  }
  if (!out) throw std::runtime_error("dump: write failed for '" + path + "'");
}

Dump read_dump(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("dump: cannot open '" + path + "'");
  char magic[8];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0)
    throw std::runtime_error("dump: bad magic in '" + path + "'");
  Dump d;
  d.kind = get_le<std::uint32_t>(in);
  const auto count = get_le<std::uint32_t>(in);
  d.time = get_f64(in);
  d.x_min = get_f64(in);
  d.x_max = get_f64(in);
  d.n_x = get_le<std::uint64_t>(in);
  d.v_min = get_f64(in);
  d.v_max = get_f64(in);
  d.n_v = get_le<std::uint64_t>(in);
  for (std::uint32_t k = 0; k < count; ++k) {
    char name[16];
    if (!in.read(name, sizeof name)) throw std::runtime_error("dump: truncated array header");
    DumpArray a;
    a.name.assign(name, strnlen(name, sizeof name));
    const auto n = get_le<std::uint64_t>(in);
    if (n > (1ull << 34)) throw std::runtime_error("dump: implausible array length");
    a.data.resize(n);
    for (auto& v : a.data) v = get_f64(in);
    d.arrays.push_back(std::move(a));
  }
  return d;
}

Dump field_dump(const SpatialGrid1D& grid, const FieldState& field) {
  Dump d;
  d.kind = Dump::field;
  d.time = field.t;
  d.x_min = grid.x_min();
  d.x_max = grid.x_max();
  d.n_x = static_cast<std::uint64_t>(grid.size());
  d.arrays = {{"u", field.u}, {"u_t", field.ut}, {"u_x", field.ux}};
  return d;
}

Dump phase_dump(double t, const PhaseGrid& f) {
  Dump d;
  d.kind = Dump::phase;
  d.time = t;
  d.x_min = f.x_axis().x_min();
  d.x_max = f.x_axis().x_max();
  d.n_x = static_cast<std::uint64_t>(f.nx());
  d.v_min = f.v_axis().x_min();
  d.v_max = f.v_axis().x_max();
  d.n_v = static_cast<std::uint64_t>(f.nv());
  d.arrays = {{"f", f.values()}};
  return d;
}

void write_field_csv(std::ostream& out, const SpatialGrid1D& grid, const FieldState& field) {
  out << "x,u,u_t,u_x\n";
  for (int i = 0; i < grid.size(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    out << format_double(grid.x(i)) << ',' << format_double(field.u[k]) << ','
        << format_double(field.ut[k]) << ',' << format_double(field.ux[k]) << '\n';
  }
}

void write_phase_csv(std::ostream& out, const PhaseGrid& f) {
  out << "x,v,f\n";
  for (int i = 0; i < f.nx(); ++i)
    for (int j = 0; j < f.nv(); ++j)
      out << format_double(f.x_axis().x(i)) << ',' << format_double(f.v_axis().x(j)) << ','
          << format_double(f.at(i, j)) << '\n';
}

void write_timeline_csv(std::ostream& out, const DiagnosticsTimeline& tl) {
  out << "step,t,P,R,rho_l1,mass_drift,f_sup,ux_sup,ux_integral,rho_max,rho_bound,"
         "max_principle,mass,support,density_bound,momentum_bound\n";
  for (const auto& r : tl.rows) {
    out << r.step << ',' << format_double(r.t) << ',' << format_double(r.momentum_support) << ','
        << format_double(r.spatial_support) << ',' << format_double(r.rho_l1) << ','
        << format_double(r.mass_drift) << ',' << format_double(r.f_sup) << ','
        << format_double(r.ux_sup) << ',' << format_double(r.ux_integral) << ','
        << format_double(r.rho_max) << ',' << format_double(r.rho_bound) << ','
        << to_string(r.max_principle) << ',' << to_string(r.mass) << ',' << to_string(r.support)
        << ',' << to_string(r.density_bound) << ',' << to_string(r.momentum_bound) << '\n';
  }
}

}  // namespace vkg

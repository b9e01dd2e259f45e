#include "vkg/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "vkg/sphere_quadrature.hpp"

namespace vkg {

using nlohmann::json;

const char* to_string(Mode m) {
  switch (m) {
    case Mode::coupled_1d:
      return "coupled-1d";
    case Mode::picard_1d:
      return "picard-1d";
    case Mode::kernel_verify_3d:
      return "kernel-verify-3d";
    default:
      return "field-crossval-1d";
  }
}

namespace {

const char* solver_name(FieldSolverKind k) {
  return k == FieldSolverKind::representation ? "representation" : "finite-difference";
}

// Reads the members of one JSON object, rejecting keys it was not asked for.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
  }
  ~ObjectReader() = default;

  template <class T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigError(field(key) + ": wrong type");
    }
  }

  void get_optional(const char* key, std::optional<double>& out) {
    seen_.insert(key);
    if (!j_.contains(key) || j_.at(key).is_null()) {
      out.reset();
      return;
    }
    double v = 0.0;
    get(key, v);
    out = v;
  }

  const json* child(const char* key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  std::string field(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!seen_.count(k)) throw ConfigError(field(k.c_str()) + ": unknown key");
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

ProfileSpec read_profile(const json& j, const std::string& path) {
  ProfileSpec p;
  ObjectReader r(j, path);
  r.get("family", p.family);
  r.get("amplitude", p.amplitude);
  r.get("width", p.width);
  r.get("center", p.center);
  r.get("wavenumber", p.wavenumber);
  r.finish();
  return p;
}

json write_profile(const ProfileSpec& p) {
  return {{"family", p.family}, {"amplitude", p.amplitude}, {"width", p.width},
          {"center", p.center}, {"wavenumber", p.wavenumber}};
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: not valid JSON: ") + e.what());
  }
  ScenarioConfig c;
  ObjectReader r(j, "");
  r.get("schema_version", c.schema_version);
  if (c.schema_version != kSchemaVersion)
    throw ConfigError("schema_version: expected " + std::to_string(kSchemaVersion) + ", got " +
                      std::to_string(c.schema_version));
  std::string mode = to_string(c.mode);
  r.get("mode", mode);
  if (mode == "coupled-1d")
    c.mode = Mode::coupled_1d;
  else if (mode == "picard-1d")
    c.mode = Mode::picard_1d;
  else if (mode == "kernel-verify-3d")
    c.mode = Mode::kernel_verify_3d;
  else if (mode == "field-crossval-1d")
    c.mode = Mode::field_crossval_1d;
  else
    throw ConfigError("mode: unknown mode '" + mode + "'");

  if (const json* p = r.child("particles")) {
    ObjectReader pr(*p, "particles");
    pr.get("family", c.particles.family);
    pr.get("amplitude", c.particles.amplitude);
    pr.get("radius_x", c.particles.radius_x);
    pr.get("radius_v", c.particles.radius_v);
    pr.get("x_center", c.particles.x_center);
    pr.get("v_center", c.particles.v_center);
    pr.finish();
  }
  if (const json* f = r.child("field")) {
    ObjectReader fr(*f, "field");
    if (const json* u = fr.child("u1")) c.u1 = read_profile(*u, "field.u1");
    if (const json* u = fr.child("u2")) c.u2 = read_profile(*u, "field.u2");
    std::string solver = solver_name(c.field_solver);
    fr.get("solver", solver);
    if (solver == "representation")
      c.field_solver = FieldSolverKind::representation;
    else if (solver == "finite-difference")
      c.field_solver = FieldSolverKind::finite_difference;
    else
      throw ConfigError("field.solver: unknown solver '" + solver + "'");
    fr.finish();
  }
  if (const json* g = r.child("grid")) {
    ObjectReader gr(*g, "grid");
    gr.get("dx", c.grid.dx);
    gr.get("dv", c.grid.dv);
    gr.get_optional("x_max", c.grid.x_max);
    gr.get_optional("v_max", c.grid.v_max);
    gr.finish();
  }
  r.get("horizon", c.horizon);
  r.get("dt", c.dt);
  if (const json* t = r.child("tolerances")) {
    ObjectReader tr(*t, "tolerances");
    tr.get("max_principle", c.tolerances.max_principle);
    tr.get("mass_drift", c.tolerances.mass_drift);
    tr.finish();
  }
  if (const json* p = r.child("picard")) {
    ObjectReader pr(*p, "picard");
    pr.get("max_iterations", c.picard.max_iterations);
    pr.get("relative_tolerance", c.picard.relative_tolerance);
    pr.finish();
  }
  if (const json* k = r.child("kernel_verify")) {
    ObjectReader kr(*k, "kernel_verify");
    kr.get("samples", c.kernel_verify.samples);
    kr.get("max_speed", c.kernel_verify.max_speed);
    kr.get("order", c.kernel_verify.order);
    kr.get("tolerance", c.kernel_verify.tolerance);
    kr.get("moment_samples", c.kernel_verify.moment_samples);
    kr.get("bound_samples", c.kernel_verify.bound_samples);
    kr.get("bound_max_speed", c.kernel_verify.bound_max_speed);
    kr.finish();
  }
  if (const json* x = r.child("crossval")) {
    ObjectReader xr(*x, "crossval");
    xr.get("n_x_levels", c.crossval.n_x_levels);
    xr.get("half_width", c.crossval.half_width);
    xr.get("horizon", c.crossval.horizon);
    xr.finish();
  }
  r.get("output", c.output);
  r.get("snapshot_every", c.snapshot_every);
  r.get("seed", c.seed);
  r.get("workers", c.workers);
  r.finish();
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& c) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json j = {
      {"schema_version", c.schema_version},
      {"mode", to_string(c.mode)},
      {"particles",
       {{"family", c.particles.family},
        {"amplitude", c.particles.amplitude},
        {"radius_x", c.particles.radius_x},
        {"radius_v", c.particles.radius_v},
        {"x_center", c.particles.x_center},
        {"v_center", c.particles.v_center}}},
      {"field",
       {{"u1", write_profile(c.u1)},
        {"u2", write_profile(c.u2)},
        {"solver", solver_name(c.field_solver)}}},
      {"grid", {{"dx", c.grid.dx}, {"dv", c.grid.dv}, {"x_max", opt(c.grid.x_max)},
                {"v_max", opt(c.grid.v_max)}}},
      {"horizon", c.horizon},
      {"dt", c.dt},
      {"tolerances",
       {{"max_principle", c.tolerances.max_principle}, {"mass_drift", c.tolerances.mass_drift}}},
      {"picard",
       {{"max_iterations", c.picard.max_iterations},
        {"relative_tolerance", c.picard.relative_tolerance}}},
      {"kernel_verify",
       {{"samples", c.kernel_verify.samples},
        {"max_speed", c.kernel_verify.max_speed},
        {"order", c.kernel_verify.order},
        {"tolerance", c.kernel_verify.tolerance},
        {"moment_samples", c.kernel_verify.moment_samples},
        {"bound_samples", c.kernel_verify.bound_samples},
        {"bound_max_speed", c.kernel_verify.bound_max_speed}}},
      {"crossval",
       {{"n_x_levels", c.crossval.n_x_levels},
        {"half_width", c.crossval.half_width},
        {"horizon", c.crossval.horizon}}},
      {"output", c.output},
      {"snapshot_every", c.snapshot_every},
      {"seed", c.seed},
      {"workers", c.workers},
  };
  return j.dump(2) + "\n";
}

AnalyticProfile make_profile(const ProfileSpec& s) {
  if (s.family == "zero") return AnalyticProfile::zero();
  if (s.family == "gaussian") return AnalyticProfile::gaussian(s.amplitude, s.width, s.center);
  if (s.family == "bump") return AnalyticProfile::bump(s.amplitude, s.width, s.center);
  if (s.family == "cosine") return AnalyticProfile::cosine(s.amplitude, s.wavenumber);
  throw ConfigError("unknown field family '" + s.family + "'");
}

InitialParticleData make_particles(const ParticleSpec& s) {
  if (s.family == "zero") return InitialParticleData::zero();
  if (s.family == "bump")
    return InitialParticleData::bump(s.amplitude, s.radius_x, s.radius_v, s.x_center, s.v_center);
  throw ConfigError("unknown particle family '" + s.family + "'");
}

namespace {

struct Box {
  int kx;
  int kv;
  double dt;
  GridSizing sizing;
};

Box box_for(const ScenarioConfig& c, const InitialParticleData& p, const InitialFieldData& f) {
  Box b;
  b.sizing = size_grids(p, f, c.horizon, c.grid.dx, c.grid.dv);
  const double xw = c.grid.x_max.value_or(b.sizing.x_half_width);
  const double vw = c.grid.v_max.value_or(b.sizing.v_half_width);
  b.kx = static_cast<int>(std::ceil(xw / c.grid.dx - 1e-9));
  b.kv = static_cast<int>(std::ceil(vw / c.grid.dv - 1e-9));
  b.dt = c.dt > 0.0 ? c.dt : 0.5 * c.grid.dx;
  return b;
}

}  // namespace

CoupledProblem make_problem(const ScenarioConfig& c) {
  CoupledProblem pr;
  pr.particles = make_particles(c.particles);
  pr.field = {make_profile(c.u1), make_profile(c.u2)};
  const Box b = box_for(c, pr.particles, pr.field);
  pr.x_axis = SpatialGrid1D(-b.kx * c.grid.dx, b.kx * c.grid.dx, 2 * b.kx + 1);
  pr.v_axis = SpatialGrid1D(-b.kv * c.grid.dv, b.kv * c.grid.dv, 2 * b.kv + 1);
  pr.T = c.horizon;
  pr.dt = b.dt;
  pr.solver = c.field_solver;
  pr.tolerances = c.tolerances;
  return pr;
}

std::vector<std::string> validate_config(const ScenarioConfig& c) {
  std::vector<std::string> out;
  auto bad = [&](const std::string& field, const std::string& msg) {
    out.push_back(field + ": " + msg);
  };
  if (c.schema_version != kSchemaVersion) bad("schema_version", "unsupported version");
  if (c.snapshot_every < 0) bad("snapshot_every", "must be >= 0");
  if (c.workers < 0) bad("workers", "must be >= 0");
  if (c.output.empty()) bad("output", "must not be empty");

  if (c.mode == Mode::kernel_verify_3d) {
    const auto& k = c.kernel_verify;
    if (k.samples <= 0) bad("kernel_verify.samples", "must be positive");
    if (!(k.max_speed > 0.0)) bad("kernel_verify.max_speed", "must be positive");
    if (k.order < SphereQuadrature::kMinOrder)
      bad("kernel_verify.order", "quadrature order below minimum " +
                                     std::to_string(SphereQuadrature::kMinOrder));
    if (!(k.tolerance > 0.0)) bad("kernel_verify.tolerance", "must be positive");
    if (k.moment_samples <= 0) bad("kernel_verify.moment_samples", "must be positive");
    if (k.bound_samples <= 0) bad("kernel_verify.bound_samples", "must be positive");
    if (!(k.bound_max_speed > 0.0)) bad("kernel_verify.bound_max_speed", "must be positive");
    return out;
  }
  if (c.mode == Mode::field_crossval_1d) {
    const auto& x = c.crossval;
    if (x.n_x_levels.size() < 2) bad("crossval.n_x_levels", "needs at least two resolutions");
    for (std::size_t i = 0; i < x.n_x_levels.size(); ++i) {
      if (x.n_x_levels[i] < 16) bad("crossval.n_x_levels", "resolutions must be >= 16");
      if (i > 0 && x.n_x_levels[i] <= x.n_x_levels[i - 1])
        bad("crossval.n_x_levels", "resolutions must increase");
    }
    if (!(x.half_width > 6.5)) bad("crossval.half_width", "must exceed 6.5 so the source vanishes at the edges");
    if (!(x.horizon > 0.0)) bad("crossval.horizon", "must be positive");
    return out;
  }

  bool grid_ok = true;
  if (!(c.grid.dx > 0.0)) bad("grid.dx", "must be positive"), grid_ok = false;
  if (!(c.grid.dv > 0.0)) bad("grid.dv", "must be positive"), grid_ok = false;
  if (!(c.horizon > 0.0)) bad("horizon", "must be positive"), grid_ok = false;
  if (c.dt < 0.0) bad("dt", "must be >= 0 (0 selects dx/2)"), grid_ok = false;
  if (c.grid.x_max && !(*c.grid.x_max > 0.0)) bad("grid.x_max", "must be positive"), grid_ok = false;
  if (c.grid.v_max && !(*c.grid.v_max > 0.0)) bad("grid.v_max", "must be positive"), grid_ok = false;
  if (!(c.tolerances.max_principle > 0.0)) bad("tolerances.max_principle", "must be positive");
  if (!(c.tolerances.mass_drift > 0.0)) bad("tolerances.mass_drift", "must be positive");
  if (c.mode == Mode::picard_1d) {
    if (c.picard.max_iterations < 1) bad("picard.max_iterations", "must be >= 1");
    if (!(c.picard.relative_tolerance > 0.0 && c.picard.relative_tolerance < 1.0))
      bad("picard.relative_tolerance", "must lie in (0, 1)");
  }

  InitialParticleData particles;
  InitialFieldData field;
  try {
    particles = make_particles(c.particles);
  } catch (const ConfigError& e) {
    bad("particles", e.what());
    grid_ok = false;
  }
  try {
    field = {make_profile(c.u1), make_profile(c.u2)};
    if (!field.u1.compact() || !field.u2.compact()) {
      bad("field", "coupled runs need localised field data (zero, gaussian or bump)");
      grid_ok = false;
    }
  } catch (const ConfigError& e) {
    bad("field", e.what());
    grid_ok = false;
  }
  if (!grid_ok) return out;

  const Box b = box_for(c, particles, field);
  const double xw = b.kx * c.grid.dx;
  const double vw = b.kv * c.grid.dv;
  if (c.field_solver == FieldSolverKind::finite_difference && b.dt > c.grid.dx * (1.0 + 1e-12))
    bad("dt", "CFL violation: dt=" + std::to_string(b.dt) + " exceeds dx=" +
                  std::to_string(c.grid.dx) + " for the finite-difference field solver");
  if (particles.sup_norm > 0.0) {
    if (particles.spatial_radius + 2.0 * c.grid.dx >= xw)
      bad("particles", "initial support touches the x-grid boundary (coverage)");
    if (particles.momentum_radius + 2.0 * c.grid.dv >= vw)
      bad("particles", "initial support touches the v-grid boundary (coverage)");
  }
  if (c.grid.x_max && xw < b.sizing.x_half_width - 1e-12)
    bad("grid.x_max", "below the a-priori support bound R0 + T plus margin (" +
                          std::to_string(b.sizing.x_half_width) + ")");
  if (c.grid.v_max && vw < b.sizing.v_half_width - 1e-12)
    bad("grid.v_max", "below 1.5 x the a-priori momentum bound plus margin (" +
                          std::to_string(b.sizing.v_half_width) + ")");
  return out;
}

}  // namespace vkg

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "vkg/config.hpp"
#include "vkg/io.hpp"
#include "vkg/scenario.hpp"

using namespace vkg;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("vkg-test-" + name);
  fs::remove_all(p);
  return p;
}

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
  for (const auto& s : v)
    if (s.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("config round trip") {
  ScenarioConfig c;
  CHECK(parse_config(serialize_config(c)) == c);
  c.mode = Mode::picard_1d;
  c.grid.x_max = 3.25;
  c.u2 = {"bump", 0.1, 0.7, 0.2, 1.0};
  c.field_solver = FieldSolverKind::finite_difference;
  c.seed = 0xFFFFFFFFFFFFFFFFull;
  c.crossval.n_x_levels = {64, 96};
  c.tolerances.mass_drift = 1.0 / 3.0;
  CHECK(parse_config(serialize_config(c)) == c);
}

TEST_CASE("config errors name the field") {
  auto msg = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(msg(R"({"schema_version": 1, "grid": {"dx": 0.1, "dz": 1}})").find("grid.dz") != std::string::npos);
  CHECK(msg(R"({"schema_version": 2})").find("schema_version") != std::string::npos);
  CHECK(msg(R"({"schema_version": 1, "mode": "sideways"})").find("mode") != std::string::npos);
  CHECK(msg(R"({"schema_version": 1, "horizon": "long"})").find("horizon") != std::string::npos);
  CHECK(msg("{not json").find("JSON") != std::string::npos);
}

TEST_CASE("validation") {
  CHECK(validate_config(ScenarioConfig{}).empty());

  ScenarioConfig cfl;
  cfl.field_solver = FieldSolverKind::finite_difference;
  cfl.dt = 0.05;
  CHECK(mentions(validate_config(cfl), "CFL"));
  cfl.field_solver = FieldSolverKind::representation;
  CHECK_FALSE(mentions(validate_config(cfl), "CFL"));

  ScenarioConfig touch;
  touch.grid.x_max = 1.0;
  CHECK(mentions(validate_config(touch), "coverage"));

  ScenarioConfig small;
  small.grid.v_max = 1.2;
  CHECK(mentions(validate_config(small), "grid.v_max"));

  ScenarioConfig neg;
  neg.grid.dx = -1.0;
  CHECK(mentions(validate_config(neg), "grid.dx"));

  ScenarioConfig k;
  k.mode = Mode::kernel_verify_3d;
  k.kernel_verify.order = 2;
  CHECK(mentions(validate_config(k), "kernel_verify.order"));
}

TEST_CASE("shipped configurations validate") {
  int seen = 0;
  for (const auto& e : fs::directory_iterator(fs::path(VKG_SOURCE_DIR) / "configs")) {
    if (e.path().extension() != ".json") continue;
    ++seen;
    INFO(e.path().string());
    const auto c = load_config(e.path().string());
    CHECK(validate_config(c).empty());
    CHECK(parse_config(serialize_config(c)) == c);
  }
  CHECK(seen >= 4);
}

TEST_CASE("binary dumps round trip") {
  const SpatialGrid1D g(-1, 1, 5);
  FieldState s{0.5, {1, 2, 3, 4, 5}, {0.1, -0.2, 1e-300, 3.0, NAN}, {0, 0, 0, 0, 1.0 / 3.0}, false};
  const auto dir = scratch("dump");
  fs::create_directories(dir);
  const auto path = (dir / "f.bin").string();
  write_dump(path, field_dump(g, s));
  const Dump d = read_dump(path);
  CHECK(d.kind == Dump::field);
  CHECK(d.time == 0.5);
  CHECK(d.n_x == 5);
  REQUIRE(d.find("u_x") != nullptr);
  CHECK(d.find("u_x")->data[2] == 1e-300);
  CHECK(std::isnan(d.find("u_x")->data[4]));
  CHECK(d.find("u_t")->data[4] == 1.0 / 3.0);

  PhaseGrid f(g, SpatialGrid1D(-2, 2, 3));
  f.at(2, 1) = 0.25;
  write_dump(path, phase_dump(1.5, f));
  const Dump p = read_dump(path);
  CHECK(p.kind == Dump::phase);
  CHECK(p.n_v == 3);
  CHECK(p.arrays.front().data == f.values());

  std::ofstream(dir / "junk.bin") << "not a dump";
  CHECK_THROWS(read_dump((dir / "junk.bin").string()));
}

TEST_CASE("csv values parse back exactly") {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -4.9e-324, 2.0}) CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
}

TEST_CASE("report: injected mass drift fails by name") {
  DiagnosticsTimeline tl;
  tl.initial_momentum = 1.0;
  tl.initial_spatial_radius = 1.0;
  tl.initial_sup = 0.1;
  tl.initial_mass = 1.0;
  tl.v_capacity = 5.0;
  tl.x_capacity = 5.0;
  tl.dx = tl.dv = 0.05;
  for (int n = 0; n < 3; ++n) {
    DiagnosticsRow r;
    r.step = static_cast<std::size_t>(n);
    r.t = 0.1 * n;
    r.momentum_support = 1.0;
    r.spatial_support = 1.0;
    r.f_sup = 0.1;
    r.rho_bound = 1.0;
    r.mass_drift = n == 2 ? 0.02 : 0.0;
    r.max_principle = r.support = r.density_bound = r.momentum_bound = Check::pass;
    r.mass = n == 2 ? Check::fail : Check::pass;
    tl.rows.push_back(r);
  }
  RunSummary s;
  s.mode = "coupled-1d";
  s.checks = timeline_checks(tl, Tolerances{});
  CHECK_FALSE(s.pass());
  const auto* m = s.find("mass_conservation");
  REQUIRE(m != nullptr);
  CHECK(m->status == Check::fail);
  CHECK(m->measured == doctest::Approx(0.02));
  const auto text = emit_report_text(s);
  CHECK(text.find("FAIL: mass_conservation (measured 0.02") != std::string::npos);

  const auto back = parse_report_json(emit_report_json(s));
  CHECK(back.checks.size() == s.checks.size());
  CHECK_FALSE(back.pass());
  CHECK(emit_report_json(back) == emit_report_json(s));

  tl.rows.back().mass = Check::pass;
  tl.rows.back().mass_drift = 0.0;
  s.checks = timeline_checks(tl, Tolerances{});
  CHECK(s.pass());
  CHECK(emit_report_text(s).find("\nPASS\n") != std::string::npos);
  CHECK_THROWS_AS(parse_report_json("{}"), ConfigError);
}

TEST_CASE("run_scenario rejects invalid configurations") {
  ScenarioConfig c;
  c.grid.dx = 0.0;
  std::ostringstream log;
  CHECK_THROWS_AS(run_scenario(c, scratch("bad").string(), log), ConfigError);
}

TEST_CASE("scenarios are deterministic") {
  auto twice = [](const ScenarioConfig& c, const std::string& name) {
    std::ostringstream log;
    const auto a = scratch(name + "-a"), b = scratch(name + "-b");
    run_scenario(c, a.string(), log);
    run_scenario(c, b.string(), log);
    CHECK(slurp(a / "diagnostics.csv") == slurp(b / "diagnostics.csv"));
    CHECK(slurp(a / "summary.json") == slurp(b / "summary.json"));
    CHECK_FALSE(slurp(a / "diagnostics.csv").empty());
  };
  ScenarioConfig k;
  k.mode = Mode::kernel_verify_3d;
  k.kernel_verify.samples = 10;
  k.kernel_verify.bound_samples = 1000;
  twice(k, "kernels");

  ScenarioConfig c;
  c.grid.dx = c.grid.dv = 0.08;
  c.horizon = 0.5;
  c.snapshot_every = 5;
  twice(c, "coupled");
  const auto snaps = fs::temp_directory_path() / "vkg-test-coupled-a" / "snapshots";
  CHECK(fs::exists(snaps / "field_000005.bin"));
  CHECK(fs::exists(snaps / "phase_000005.bin"));
  CHECK(fs::exists(snaps / "field_000005.csv"));
}

TEST_CASE("zero particles: every invariant passes") {
  ScenarioConfig c;
  c.particles.family = "zero";
  c.grid.dx = c.grid.dv = 0.08;
  c.grid.x_max = 4.0;
  c.grid.v_max = 2.0;
  c.horizon = 1.0;
  std::ostringstream log;
  const auto s = run_scenario(c, scratch("zero").string(), log);
  for (const auto& chk : s.checks) {
    INFO(chk.name);
    CHECK(chk.status == Check::pass);
  }
}

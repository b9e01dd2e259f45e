#include "vkg/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "vkg/io.hpp"
#include "vkg/verification.hpp"

namespace vkg {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

bool RunSummary::pass() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckResult& c) { return c.status == Check::fail; });
}

const CheckResult* RunSummary::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

Check verdict(bool ok) { return ok ? Check::pass : Check::fail; }

// Folds per-row tri-state flags: any fail fails, any pass passes, else n/a.
Check fold(const DiagnosticsTimeline& tl, Check DiagnosticsRow::*flag) {
  Check out = Check::not_applicable;
  for (const auto& r : tl.rows) {
    if (r.*flag == Check::fail) return Check::fail;
    if (r.*flag == Check::pass) out = Check::pass;
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(4) << v;
  return s.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace

std::vector<CheckResult> timeline_checks(const DiagnosticsTimeline& tl, const Tolerances& tol) {
  std::vector<CheckResult> out;
  double dev = 0.0;
  double drift = 0.0;
  double r_excess = -std::numeric_limits<double>::infinity();
  double rho_ratio = 0.0;
  for (const auto& r : tl.rows) {
    if (tl.initial_sup > 0.0) dev = std::max(dev, std::abs(r.f_sup / tl.initial_sup - 1.0));
    drift = std::max(drift, std::abs(r.mass_drift));
    r_excess = std::max(r_excess, r.spatial_support - tl.initial_spatial_radius - r.t);
    if (r.rho_bound > 0.0) rho_ratio = std::max(rho_ratio, r.rho_max / r.rho_bound);
  }
  const ContinuationStatus cont = continuation_monitor(tl);
  out.push_back({"max_principle", fold(tl, &DiagnosticsRow::max_principle), dev, tol.max_principle,
                 "max relative deviation of ||f(t)||_inf from ||f0||_inf"});
  out.push_back({"mass_conservation", fold(tl, &DiagnosticsRow::mass), drift, tol.mass_drift,
                 "max relative drift of ||rho(t)||_1"});
  out.push_back({"support_bound", fold(tl, &DiagnosticsRow::support), r_excess, tl.dx,
                 "max of R(t) - (R0 + t); limit one x-cell"});
  out.push_back({"density_bound", fold(tl, &DiagnosticsRow::density_bound), rho_ratio, 1.0,
                 "max of rho / (2 ||f0||_inf P(t))"});
  out.push_back({"momentum_bound", fold(tl, &DiagnosticsRow::momentum_bound), cont.worst_excess, tl.dv,
                 "max of P(t) - P0 - int ||u_x||; limit one v-cell"});
  out.push_back({"continuation", verdict(cont.ok && !cont.suspect), cont.max_momentum, tl.v_capacity,
                 cont.message});
  out.push_back({"coverage", verdict(!tl.blow_up), tl.blow_up ? 1.0 : 0.0, 0.0,
                 tl.blow_up ? tl.blow_up_reason : "support stayed inside the grids"});
  return out;
}

std::string emit_report_text(const RunSummary& s) {
  std::ostringstream o;
  o << "mode: " << s.mode << "\n";
  for (const auto& c : s.checks) {
    const char* tag = c.status == Check::pass ? "PASS" : c.status == Check::fail ? "FAIL" : "N/A ";
    o << "  " << tag << "  " << std::left << std::setw(26) << c.name << " measured " << fmt(c.measured)
      << "  limit " << fmt(c.limit);
    if (!c.detail.empty()) o << "  (" << c.detail << ")";
    o << "\n";
  }
  if (!s.metrics.empty()) {
    o << "metrics:\n";
    for (const auto& [k, v] : s.metrics) o << "  " << std::left << std::setw(28) << k << fmt(v) << "\n";
  }
  if (s.convergence) {
    o << "picard gaps:\n   n   |du_x| gap    |f| gap       ratio     Q_n\n";
    for (const auto& e : s.convergence->entries)
      o << "  " << std::setw(3) << e.n << "  " << std::setw(12) << fmt(e.ux_gap) << "  "
        << std::setw(12) << fmt(e.f_gap) << "  " << std::setw(8) << fmt(e.ratio) << "  " << fmt(e.q)
        << "\n";
  }
  if (s.pass()) {
    o << "PASS\n";
  } else {
    for (const auto& c : s.checks)
      if (c.status == Check::fail)
        o << "FAIL: " << c.name << " (measured " << fmt(c.measured) << ", limit " << fmt(c.limit)
          << ")\n";
  }
  return o.str();
}

std::string emit_report_json(const RunSummary& s) {
  ojson j;
  j["mode"] = s.mode;
  j["verdict"] = s.pass() ? "PASS" : "FAIL";
  j["checks"] = ojson::array();
  for (const auto& c : s.checks)
    j["checks"].push_back({{"name", c.name},
                           {"status", to_string(c.status)},
                           {"measured", c.measured},
                           {"limit", c.limit},
                           {"detail", c.detail}});
  j["metrics"] = ojson::object();
  for (const auto& [k, v] : s.metrics) j["metrics"][k] = v;
  if (s.convergence) {
    ojson c;
    c["converged"] = s.convergence->converged;
    c["blow_up"] = s.convergence->blow_up;
    c["relative_tolerance"] = s.convergence->relative_tolerance;
    c["entries"] = ojson::array();
    for (const auto& e : s.convergence->entries)
      c["entries"].push_back(
          {{"n", e.n}, {"ux_gap", e.ux_gap}, {"f_gap", e.f_gap}, {"ratio", e.ratio}, {"q", e.q}});
    j["convergence"] = c;
  }
  return j.dump(2) + "\n";
}

RunSummary parse_report_json(const std::string& text) {
  RunSummary s;
  try {
    const ojson j = ojson::parse(text);
    auto num = [](const ojson& v) {
      return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
    };
    s.mode = j.at("mode").get<std::string>();
    for (const auto& c : j.at("checks")) {
      CheckResult r;
      r.name = c.at("name").get<std::string>();
      const auto st = c.at("status").get<std::string>();
      r.status = st == "pass" ? Check::pass : st == "fail" ? Check::fail : Check::not_applicable;
      r.measured = num(c.at("measured"));
      r.limit = num(c.at("limit"));
      r.detail = c.value("detail", "");
      s.checks.push_back(r);
    }
    for (const auto& [k, v] : j.at("metrics").items()) s.metrics.emplace_back(k, num(v));
    if (j.contains("convergence")) {
      ConvergenceReport rep;
      const auto& c = j.at("convergence");
      rep.converged = c.at("converged").get<bool>();
      rep.blow_up = c.at("blow_up").get<bool>();
      rep.relative_tolerance = num(c.at("relative_tolerance"));
      for (const auto& e : c.at("entries"))
        rep.entries.push_back({e.at("n").get<std::size_t>(), num(e.at("ux_gap")), num(e.at("f_gap")),
                               num(e.at("ratio")), num(e.at("q"))});
      s.convergence = rep;
    }
  } catch (const ojson::exception& e) {
    throw ConfigError(std::string("summary: malformed report: ") + e.what());
  }
  return s;
}

namespace {

void add_grid_metrics(RunSummary& s, const CoupledProblem& p) {
  const auto [steps, dt] = time_steps(p.T, p.dt);
  s.metrics.emplace_back("n_x", p.x_axis.size());
  s.metrics.emplace_back("n_v", p.v_axis.size());
  s.metrics.emplace_back("dx", p.x_axis.dx());
  s.metrics.emplace_back("dv", p.v_axis.dx());
  s.metrics.emplace_back("dt", dt);
  s.metrics.emplace_back("steps", static_cast<double>(steps));
}

void add_timeline_metrics(RunSummary& s, const DiagnosticsTimeline& tl) {
  double p_max = 0.0;
  double drift = 0.0;
  for (const auto& r : tl.rows) {
    p_max = std::max(p_max, r.momentum_support);
    drift = std::max(drift, std::abs(r.mass_drift));
  }
  s.metrics.emplace_back("final_time", tl.rows.back().t);
  s.metrics.emplace_back("max_momentum_support", p_max);
  s.metrics.emplace_back("max_mass_drift", drift);
  s.metrics.emplace_back("final_ux_sup", tl.rows.back().ux_sup);
  s.metrics.emplace_back("ux_integral", tl.rows.back().ux_integral);
}

RunSummary run_coupled_mode(const ScenarioConfig& c, const fs::path& dir, std::ostream& log) {
  RunSummary s;
  s.mode = to_string(c.mode);
  const CoupledProblem p = make_problem(c);
  log << "coupled run: n_x=" << p.x_axis.size() << " n_v=" << p.v_axis.size() << " T=" << p.T
      << "\n";
  const fs::path snaps = dir / "snapshots";
  SnapshotSink sink;
  if (c.snapshot_every > 0) {
    fs::create_directories(snaps);
    sink = [&](const Snapshot& snap) {
      char tag[32];
      std::snprintf(tag, sizeof tag, "%06zu", snap.step);
      write_dump((snaps / (std::string("field_") + tag + ".bin")).string(),
                 field_dump(p.x_axis, snap.field));
      write_dump((snaps / (std::string("phase_") + tag + ".bin")).string(), phase_dump(snap.t, snap.f));
      std::ofstream csv(snaps / (std::string("field_") + tag + ".csv"), std::ios::binary);
      write_field_csv(csv, p.x_axis, snap.field);
    };
  }
  const CoupledResult r = run_coupled(p, sink, static_cast<std::size_t>(c.snapshot_every));
  {
    std::ofstream csv(dir / "diagnostics.csv", std::ios::binary);
    write_timeline_csv(csv, r.timeline);
  }
  s.checks = timeline_checks(r.timeline, p.tolerances);
  add_grid_metrics(s, p);
  add_timeline_metrics(s, r.timeline);
  return s;
}

double sup_trajectory_diff(const std::vector<std::vector<double>>& a,
                           const std::vector<std::vector<double>>& b, std::size_t stride_b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size() && k * stride_b < b.size(); ++k)
    for (std::size_t i = 0; i < a[k].size(); ++i)
      m = std::max(m, std::abs(a[k][i] - b[k * stride_b][i]));
  return m;
}

RunSummary run_picard_mode(const ScenarioConfig& c, const fs::path& dir, std::ostream& log) {
  RunSummary s;
  s.mode = to_string(c.mode);
  const CoupledProblem p = make_problem(c);
  log << "picard run: n_x=" << p.x_axis.size() << " n_v=" << p.v_axis.size() << " T0=" << p.T
      << "\n";
  const PicardResult pic = run_picard(p, static_cast<std::size_t>(c.picard.max_iterations),
                                      c.picard.relative_tolerance);
  const ConvergenceReport& rep = pic.report;
  {
    std::ofstream csv(dir / "diagnostics.csv", std::ios::binary);
    csv << "n,ux_gap,f_gap,ratio,q\n";
    for (const auto& e : rep.entries)
      csv << e.n << ',' << format_double(e.ux_gap) << ',' << format_double(e.f_gap) << ','
          << format_double(e.ratio) << ',' << format_double(e.q) << '\n';
  }

  // Direct solver at dt and dt/2; their difference sets the discretization
  // tolerance for the comparison with the converged iterate.
  const CoupledResult direct = run_coupled(p, {}, 0, true);
  CoupledProblem half = p;
  half.dt = time_steps(p.T, p.dt).second / 2.0;
  const CoupledResult fine = run_coupled(half, {}, 0, true);
  {
    std::ofstream csv(dir / "coupled_diagnostics.csv", std::ios::binary);
    write_timeline_csv(csv, direct.timeline);
  }
  const double disc = sup_trajectory_diff(direct.ux_trajectory, fine.ux_trajectory, 2);
  const double match = rep.blow_up ? std::numeric_limits<double>::infinity()
                                   : sup_trajectory_diff(pic.last.ux, direct.ux_trajectory, 1);

  const double g0 = rep.initial_gap();
  const double last = rep.entries.empty() ? 0.0 : rep.entries.back().ux_gap;
  s.checks.push_back({"picard_convergence", verdict(rep.converged && !rep.blow_up),
                      g0 > 0.0 ? last / g0 : 0.0, rep.relative_tolerance,
                      "final gap relative to gap(1,0) within " +
                          std::to_string(c.picard.max_iterations) + " iterations"});
  std::size_t pairs = 0;
  for (std::size_t i = 1; i < rep.entries.size(); ++i) pairs += rep.entries[i - 1].n >= 3 ? 1 : 0;
  s.checks.push_back({"gap_monotone", verdict(pairs > 0 && rep.monotone_from(3)),
                      static_cast<double>(pairs), 1.0,
                      "gap(n+1,n) <= gap(n,n-1) for n >= 3; measured = pairs compared"});
  s.checks.push_back({"picard_matches_coupled", verdict(match <= 2.0 * disc + 1e-13), match, 2.0 * disc,
                      "sup |u_x picard - u_x coupled| vs twice the dt-halving difference"});
  for (auto& chk : timeline_checks(direct.timeline, p.tolerances)) s.checks.push_back(chk);

  add_grid_metrics(s, p);
  s.metrics.emplace_back("iterations", static_cast<double>(rep.entries.size()));
  s.metrics.emplace_back("initial_gap", g0);
  s.metrics.emplace_back("final_gap", last);
  s.metrics.emplace_back("discretization_tolerance", disc);
  s.metrics.emplace_back("picard_vs_coupled", match);
  add_timeline_metrics(s, direct.timeline);
  s.convergence = rep;

  if (c.snapshot_every > 0 && !pic.last.f.empty()) {
    const fs::path snaps = dir / "snapshots";
    fs::create_directories(snaps);
    write_dump((snaps / "picard_phase_final.bin").string(), phase_dump(pic.last.times.back(), pic.last.f.back()));
  }
  return s;
}

RunSummary run_kernel_mode(const ScenarioConfig& c, const fs::path& dir, std::ostream& log) {
  RunSummary s;
  s.mode = to_string(c.mode);
  const auto& k = c.kernel_verify;
  log << "kernel verification: " << k.samples << " momenta, order " << k.order << "\n";
  // Independent streams per check so changing one sample count leaves the
  // others' samples unchanged.
  const KernelCancellationReport can =
      verify_kernel_cancellation(c.seed, k.samples, k.max_speed, k.order, k.tolerance);
  const MomentReport mom =
      verify_moment_identities(c.seed + 1, k.moment_samples, k.max_speed, k.order, k.tolerance);
  const PointwiseBoundReport bnd = verify_pointwise_bound(c.seed + 2, k.bound_samples, k.bound_max_speed);
  const StReport st = st_convergence();
  const FlowReport flow = flow_identities();
  {
    std::ofstream csv(dir / "diagnostics.csv", std::ios::binary);
    csv << "sample,v1,v2,v3,speed,worst_average,worst_average_doubled,converging\n";
    for (std::size_t i = 0; i < can.samples.size(); ++i) {
      const auto& e = can.samples[i];
      csv << i << ',' << format_double(e.v[0]) << ',' << format_double(e.v[1]) << ','
          << format_double(e.v[2]) << ',' << format_double(norm(e.v)) << ','
          << format_double(e.worst_average) << ',' << format_double(e.worst_average_doubled) << ','
          << (e.converging ? 1 : 0) << '\n';
    }
  }
  const bool conv = std::all_of(can.samples.begin(), can.samples.end(),
                                [](const KernelSample& e) { return e.converging; });
  s.checks.push_back({"kernel_cancellation", verdict(can.worst <= k.tolerance), can.worst, k.tolerance,
                      "max |sphere average| of the ten second-order kernels"});
  s.checks.push_back({"kernel_order_doubling", verdict(conv), conv ? 0.0 : 1.0, 0.0,
                      "every average decreases on doubling or is below 1e-12 of its |kernel| integral"});
  s.checks.push_back({"moment_identities", verdict(mom.pass), mom.worst_relative, k.tolerance,
                      "max relative error of the four moment identities"});
  s.checks.push_back({"pointwise_bound", verdict(bnd.pass), static_cast<double>(bnd.violations), 0.0,
                      "violations of 1/(1+w.vhat) <= 2(1+|v|^2)"});
  double st_worst = 0.0;
  for (const auto& e : st.entries)
    st_worst = std::max({st_worst, std::abs(e.spatial_ratio() - 4.0), std::abs(e.time_ratio() - 4.0)});
  s.checks.push_back({"st_decomposition", verdict(st.pass), st_worst, 0.5,
                      "max |residual ratio - 4| per halving of h"});
  double comp = 0.0, jac = 0.0, det = 0.0;
  for (const auto& e : flow.entries) {
    comp = std::max({comp, e.composition_error, e.roundtrip_error});
    jac = std::max(jac, e.jacobian_deviation);
    det = std::max(det, e.determinant_error);
  }
  s.checks.push_back({"flow_composition", verdict(comp <= 1e-8), comp, 1e-8,
                      "composition and inverse round trip over unit time"});
  s.checks.push_back({"variational_matrix", verdict(jac <= 1e-5), jac, 1e-5,
                      "co-integrated Jacobian vs finite differences"});
  s.checks.push_back({"unit_determinant", verdict(det <= 1e-8), det, 1e-8, "|det dZ/dz - 1|"});
  s.metrics.emplace_back("samples", k.samples);
  s.metrics.emplace_back("order", k.order);
  s.metrics.emplace_back("worst_average", can.worst);
  s.metrics.emplace_back("worst_bound_ratio", bnd.worst_ratio);
  return s;
}

RunSummary run_crossval_mode(const ScenarioConfig& c, const fs::path& dir, std::ostream& log) {
  RunSummary s;
  s.mode = to_string(c.mode);
  log << "field cross-validation on " << c.crossval.n_x_levels.size() << " resolutions\n";
  const CrossValReport x = field_crossvalidation(c.crossval.n_x_levels, c.crossval.half_width,
                                                 c.crossval.horizon);
  const DispersionReport d = dispersion_check();
  {
    std::ofstream csv(dir / "diagnostics.csv", std::ios::binary);
    csv << "n_x,dx,dt,relative_difference,representation_error,fd_error\n";
    for (const auto& l : x.levels)
      csv << l.n_x << ',' << format_double(l.dx) << ',' << format_double(l.dt) << ','
          << format_double(l.relative_difference) << ',' << format_double(l.representation_error)
          << ',' << format_double(l.fd_error) << '\n';
  }
  const double finest = x.levels.empty() ? 0.0 : x.levels.back().relative_difference;
  double min_order = std::numeric_limits<double>::infinity();
  for (double o : x.orders) min_order = std::min(min_order, o);
  s.checks.push_back({"field_crossvalidation", verdict(finest <= x.tolerance), finest, x.tolerance,
                      "relative L2 difference of representation and leapfrog at the finest level"});
  s.checks.push_back({"crossval_order", verdict(min_order >= x.min_order), min_order, x.min_order,
                      "observed order of the difference under refinement"});
  double spectral = 0.0;
  double fd_order = std::numeric_limits<double>::infinity();
  for (const auto& e : d.entries) {
    spectral = std::max(spectral, e.spectral_relative_error);
    for (double o : e.fd_orders) fd_order = std::min(fd_order, o);
  }
  s.checks.push_back({"spectral_dispersion", verdict(spectral <= 1e-10), spectral, 1e-10,
                      "relative frequency error for k = 1, 2, 4"});
  s.checks.push_back({"fd_dispersion_order", verdict(fd_order >= 1.8), fd_order, 1.8,
                      "observed order of the leapfrog frequency error"});
  for (const auto& l : x.levels) {
    s.metrics.emplace_back("difference_n" + std::to_string(l.n_x), l.relative_difference);
    s.metrics.emplace_back("representation_error_n" + std::to_string(l.n_x), l.representation_error);
    s.metrics.emplace_back("fd_error_n" + std::to_string(l.n_x), l.fd_error);
  }
  return s;
}

}  // namespace

RunSummary run_scenario(const ScenarioConfig& config, const std::string& output_dir,
                        std::ostream& log) {
  const auto violations = validate_config(config);
  if (!violations.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw ConfigError(msg);
  }
  const fs::path dir(output_dir);
  fs::create_directories(dir);
  RunSummary s;
  switch (config.mode) {
    case Mode::coupled_1d:
      s = run_coupled_mode(config, dir, log);
      break;
    case Mode::picard_1d:
      s = run_picard_mode(config, dir, log);
      break;
    case Mode::kernel_verify_3d:
      s = run_kernel_mode(config, dir, log);
      break;
    case Mode::field_crossval_1d:
      s = run_crossval_mode(config, dir, log);
      break;
  }
  write_text(dir / "summary.json", emit_report_json(s));
  return s;
}

}  // namespace vkg

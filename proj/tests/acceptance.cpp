// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <omp.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "vkg/config.hpp"
#include "vkg/scenario.hpp"
#include "vkg/verification.hpp"

using namespace vkg;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void verdict(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s [%2d] %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

ScenarioConfig shipped(const char* name) {
  return load_config((fs::path(VKG_SOURCE_DIR) / "configs" / name).string());
}

fs::path out_dir(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("vkg-acceptance-" + name);
  fs::remove_all(p);
  return p;
}

// Runs a shipped scenario and reports every named check that fails.
RunSummary run_and_collect(const ScenarioConfig& c, const std::string& name, std::string& failed) {
  std::ostringstream log;
  const auto s = run_scenario(c, out_dir(name).string(), log);
  for (const auto& chk : s.checks)
    if (chk.status == Check::fail) failed += " " + chk.name;
  return s;
}

double metric(const RunSummary& s, const std::string& key) {
  for (const auto& [k, v] : s.metrics)
    if (k == key) return v;
  return -1.0;
}

}  // namespace

int main() {
  const std::uint64_t seed = ScenarioConfig{}.seed;

  {
    const auto r = verify_kernel_cancellation(seed, 100, 10.0, 64, 1e-8);
    const bool conv = std::all_of(r.samples.begin(), r.samples.end(),
                                  [](const KernelSample& s) { return s.converging; });
    verdict(1, "kernel cancellation", r.pass && conv,
            fmt("worst |avg| %.3g over 100 momenta x 10 kernels, order 64; ", r.worst) +
                (conv ? "all decrease on doubling" : "some do not decrease on doubling"));
  }
  {
    const auto r = verify_moment_identities(seed + 1, 20, 10.0, 64, 1e-8);
    verdict(2, "moment identities", r.pass, fmt("worst relative error %.3g on 20 momenta", r.worst_relative));
  }
  {
    const auto r = verify_pointwise_bound(seed + 2, 100000, 50.0);
    verdict(3, "pointwise bound", r.pass,
            fmt("%.0f violations in 1e5 samples, worst ratio %.6f", static_cast<double>(r.violations),
                r.worst_ratio));
  }
  {
    const auto r = field_crossvalidation({128, 256, 512}, 8.0, 2.0);
    const double finest = r.levels.back().relative_difference;
    const double order = *std::min_element(r.orders.begin(), r.orders.end());
    verdict(4, "field solver cross-validation", finest <= 1e-2 && order >= 1.8,
            fmt("relative L2 %.3g at n_x=512, orders >= %.3f", finest, order));
  }
  {
    const auto r = dispersion_check();
    double spectral = 0.0, order = 1e300;
    for (const auto& e : r.entries) {
      spectral = std::max(spectral, e.spectral_relative_error);
      for (double o : e.fd_orders) order = std::min(order, o);
    }
    verdict(5, "dispersion", spectral <= 1e-10 && order >= 1.8,
            fmt("spectral relative error %.3g, leapfrog order >= %.3f", spectral, order));
  }
  {
    const auto r = st_convergence();
    double lo = 1e300, hi = 0.0;
    for (const auto& e : r.entries)
      for (double q : {e.spatial_ratio(), e.time_ratio()}) {
        lo = std::min(lo, q);
        hi = std::max(hi, q);
      }
    verdict(6, "S/T decomposition", lo >= 3.5 && hi <= 4.5,
            fmt("residual ratios in [%.4f, %.4f] on three functions", lo, hi));
  }
  {
    std::string failed;
    const auto s = run_and_collect(shipped("reference.json"), "reference", failed);
    const auto* mp = s.find("max_principle");
    const auto* md = s.find("mass_conservation");
    verdict(7, "coupled reference run", failed.empty(),
            (failed.empty() ? std::string() : "failed:" + failed + "; ") +
                fmt("T=4, max-principle dev %.3g, mass drift %.3g, ", mp->measured, md->measured) +
                fmt("P_max %.4f", metric(s, "max_momentum_support")));
  }
  {
    std::string failed;
    const auto s = run_and_collect(shipped("picard.json"), "picard", failed);
    verdict(8, "Picard convergence", failed.empty(),
            (failed.empty() ? std::string() : "failed:" + failed + "; ") +
                fmt("%.0f iterations, final/initial gap %.3g, |picard - coupled| %.3g", metric(s, "iterations"),
                    metric(s, "final_gap") / metric(s, "initial_gap"), metric(s, "picard_vs_coupled")));
  }
  {
    const auto r = flow_identities(1e-3);
    double comp = 0.0, jac = 0.0, det = 0.0;
    for (const auto& e : r.entries) {
      comp = std::max({comp, e.composition_error, e.roundtrip_error});
      jac = std::max(jac, e.jacobian_deviation);
      det = std::max(det, e.determinant_error);
    }
    verdict(9, "flow identities", comp <= 1e-8 && jac <= 1e-5 && det <= 1e-8,
            fmt("composition/round trip %.3g, variational %.3g, |det-1| %.3g", comp, jac, det));
  }
  {
    // Same scenario twice, with different thread counts.
    const auto c = shipped("picard.json");
    std::ostringstream log;
    const int threads = omp_get_max_threads();
    const auto da = out_dir("det-a"), db = out_dir("det-b");
    omp_set_num_threads(1);
    run_scenario(c, da.string(), log);
    omp_set_num_threads(3);
    run_scenario(c, db.string(), log);
    omp_set_num_threads(threads);
    std::size_t bytes = 0;
    bool same = true;
    for (const char* file : {"diagnostics.csv", "coupled_diagnostics.csv", "summary.json"}) {
      const auto a = slurp(da / file);
      const auto b = slurp(db / file);
      same = same && !a.empty() && a == b;
      bytes += a.size();
    }
    verdict(10, "determinism", same,
            fmt("diagnostics.csv, coupled_diagnostics.csv, summary.json (%.0f bytes) identical across "
                "runs with 1 and 3 threads",
                static_cast<double>(bytes)));
  }
  return failures == 0 ? 0 : 1;
}

// Command-line driver: vkg run|validate|report.
// Exit codes: 0 all checks pass, 1 an invariant failed, 2 usage or config error.

#include <omp.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "vkg/config.hpp"
#include "vkg/errors.hpp"
#include "vkg/scenario.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kInvariant = 1;
constexpr int kUsage = 2;

struct Options {
  std::string config;
  std::optional<std::string> output;
  std::optional<int> workers;
  std::optional<std::uint64_t> seed;
  std::optional<int> snapshot_every;
};

vkg::ScenarioConfig effective_config(const Options& o) {
  vkg::ScenarioConfig c = vkg::load_config(o.config);
  if (o.output) c.output = *o.output;
  if (o.workers) c.workers = *o.workers;
  if (o.seed) c.seed = *o.seed;
  if (o.snapshot_every) c.snapshot_every = *o.snapshot_every;
  return c;
}

int cmd_validate(const Options& o) {
  const auto c = effective_config(o);
  const auto violations = vkg::validate_config(c);
  if (violations.empty()) {
    std::cout << o.config << ": ok (" << vkg::to_string(c.mode) << ")\n";
    return kPass;
  }
  for (const auto& v : violations) std::cerr << o.config << ": " << v << "\n";
  return kUsage;
}

int cmd_run(const Options& o) {
  const auto c = effective_config(o);
  if (c.workers > 0) omp_set_num_threads(c.workers);
  const auto summary = vkg::run_scenario(c, c.output, std::cerr);
  std::ofstream(std::filesystem::path(c.output) / "config.json") << vkg::serialize_config(c);
  std::cout << vkg::emit_report_text(summary);
  return summary.pass() ? kPass : kInvariant;
}

int cmd_report(const Options& o) {
  std::string dir;
  if (o.output)
    dir = *o.output;
  else if (!o.config.empty())
    dir = vkg::load_config(o.config).output;
  else
    throw vkg::ConfigError("report: give --output <dir> or --config <path>");
  const auto path = std::filesystem::path(dir) / "summary.json";
  std::ifstream in(path, std::ios::binary);
  if (!in) throw vkg::ConfigError("report: cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  const auto summary = vkg::parse_report_json(ss.str());
  std::cout << vkg::emit_report_text(summary);
  return summary.pass() ? kPass : kInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vlasov-Klein-Gordon solver and verification harness"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", o.config, "scenario JSON file");
    if (config_required) opt->required()->check(CLI::ExistingFile);
    sub->add_option("--output", o.output, "output directory (overrides the config)");
    sub->add_option("--workers", o.workers, "OpenMP threads, 0 = hardware default")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", o.seed, "random seed for sampled checks");
    sub->add_option("--snapshot-every", o.snapshot_every, "write snapshots every N steps, 0 = off")
        ->check(CLI::NonNegativeNumber);
  };
  auto* run = app.add_subcommand("run", "execute a scenario and write its artifacts");
  auto* validate = app.add_subcommand("validate", "check a configuration without running it");
  auto* report = app.add_subcommand("report", "print the summary of a finished run");
  add_common(run, true);
  add_common(validate, true);
  add_common(report, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*run) return cmd_run(o);
    if (*validate) return cmd_validate(o);
    return cmd_report(o);
  } catch (const vkg::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvariant;
  }
}

#include <filesystem>
#include <functional>
#include <iostream>

#include "CLI11.hpp"

#include "conetrace/acceptance.hpp"
#include "conetrace/commands.hpp"

using namespace conetrace;

namespace {

int write_outputs(const CommandOutput& out, const std::string& command, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const auto path = [&](const std::string& name) { return (std::filesystem::path(dir) / name).string(); };
  const std::string text = dump_report(out.report);
  write_file(path(command + ".json"), text);
  for (const auto& [name, contents] : out.files) write_file(path(name), contents);
  std::cout << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conetrace — resolvent traces, expansions and zeta functions of cone operators"};
  app.footer(config_help());
  app.require_subcommand(1);

  std::string config_path, out_dir, samples_path;
  bool plot = false;
  int threads = 1, criterion = 0;

  auto common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", config_path, "analysis config (JSON)")->check(CLI::ExistingFile);
    if (needs_config) opt->required();
    sub->add_flag("--plot", plot, "also emit SVG plots");
    sub->add_option("--threads", threads, "worker threads for λ sampling")->check(CLI::Range(1, 256));
    sub->add_option("--out", out_dir, "output directory (default: output.dir of the config)");
  };
  auto* analyze = app.add_subcommand("analyze", "boundary spectrum, singular functions, θ tails");
  auto* domains = app.add_subcommand("domains", "κ generator, stationarity, Friedrichs domain");
  auto* ray = app.add_subcommand("trace-ray", "resolvent traces along a ray (CSV + report)");
  auto* fit = app.add_subcommand("fit", "fit the ray expansion and detect log terms");
  auto* zeta = app.add_subcommand("zeta", "heat trace, ζ values and pole table");
  auto* self = app.add_subcommand("selftest", "run the acceptance suite");
  for (auto* s : {analyze, domains, ray, fit, zeta}) common(s, true);
  common(self, false);
  fit->add_option("--samples", samples_path, "read samples CSV instead of tracing")->check(CLI::ExistingFile);
  self->add_option("--criterion", criterion, "run a single criterion")->check(CLI::Range(1, kCriterionCount));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (self->parsed()) {
      bool ok = true;
      auto run = [&](int id) {
        const auto r = run_criterion(id, threads);
        ok = ok && r.passed;
        std::cout << format_result(r) << std::endl;
      };
      if (criterion) run(criterion);
      else
        for (int id = 1; id <= kCriterionCount; ++id) run(id);
      std::cout << (ok ? "selftest: all criteria passed" : "selftest: FAILED") << std::endl;
      return ok ? 0 : 1;
    }

    const AnalysisConfig cfg = load_config(config_path);
    const std::string dir = out_dir.empty() ? cfg.output.dir : out_dir;
    RunOptions ro;
    ro.threads = threads;
    ro.plot = plot;
    ro.samples_path = samples_path;
    if (analyze->parsed()) return write_outputs(cmd_analyze(cfg), "analyze", dir);
    if (domains->parsed()) return write_outputs(cmd_domains(cfg), "domains", dir);
    if (ray->parsed()) return write_outputs(cmd_trace_ray(cfg, ro), "trace-ray", dir);
    if (fit->parsed()) return write_outputs(cmd_fit(cfg, ro), "fit", dir);
    if (zeta->parsed()) return write_outputs(cmd_zeta(cfg, ro), "zeta", dir);
  } catch (const Error& e) {
    std::cerr << "conetrace: " << e.what() << "\n";
    return e.code() == ErrorCode::ConfigError ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "conetrace: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

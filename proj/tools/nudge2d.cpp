// nudge2d command-line driver: run, sweep, bounds, verify, plot-data.
#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>

#include "nudge2d/config.hpp"
#include "nudge2d/experiment.hpp"

namespace fs = std::filesystem;
using namespace nudge2d;

namespace {

fs::path output_dir(const std::string& flag) {
  if (const char* env = std::getenv("NUDGE2D_OUT"); env != nullptr && *env != '\0') return env;
  return flag;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous data assimilation for the periodic 2D Navier-Stokes equations"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out = "out";
  int workers = 0;
  std::optional<std::uint64_t> seed;
  bool override_size = false;

  auto* run = app.add_subcommand("run", "single assimilation run");
  run->add_option("--config", config_path, "config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "output directory (NUDGE2D_OUT overrides)");
  run->add_option("--seed", seed, "reference initial-condition seed");

  auto* sweep = app.add_subcommand("sweep", "parameter sweep over the [sweep] axes");
  sweep->add_option("--config", config_path, "config file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", out, "output directory (NUDGE2D_OUT overrides)");
  sweep->add_option("--workers", workers, "parallel runs (0 = all cores)");
  sweep->add_option("--seed", seed, "base seed when the sweep has no seeds axis");
  sweep->add_flag("--override-size", override_size, "allow more than 100000 runs");

  bounds::PhysicalSetup setup;
  double mu = 0.0;
  double tau = 1.0;
  bool as_json = false;
  auto* bnd = app.add_subcommand("bounds", "closed-form thresholds and attractor bounds");
  bnd->add_option("--config", config_path, "take nu, lambda1, ||f||, c, c_tilde and mu from a config");
  bnd->add_option("--nu", setup.nu);
  bnd->add_option("--lambda1", setup.lambda1);
  bnd->add_option("--f-norm", setup.f_norm, "||f|| in L2");
  bnd->add_option("--c", setup.c);
  bnd->add_option("--c-tilde", setup.c_tilde);
  bnd->add_option("--c0", setup.c0);
  bnd->add_option("--mu", mu);
  bnd->add_option("--tau", tau, "averaging window for time-integrated bounds");
  bnd->add_flag("--json", as_json, "structured output");

  auto* verify = app.add_subcommand("verify", "built-in verification suites");

  std::string plot_file;
  auto* plot = app.add_subcommand("plot-data", "long-format CSV from the runs under --out");
  plot->add_option("--out", out, "directory holding run folders (NUDGE2D_OUT overrides)");
  plot->add_option("--output", plot_file, "target file (default <out>/plot_data.csv)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      AssimilationConfig cfg = parse_config(config_path).run;
      if (seed) cfg.seed = *seed;
      const RunRecord rec = cmd_run(cfg, output_dir(out), std::cout);
      return rec.status == RunStatus::failed ? 2 : 0;
    }
    if (sweep->parsed()) {
      const ParsedConfig parsed = parse_config(config_path);
      SweepSpec spec{parsed.run, parsed.sweep.value_or(SweepAxes{})};
      if (seed) spec.base.seed = *seed;
      const int n_workers = workers > 0 ? workers : spec.axes.workers;
      const auto records = cmd_sweep(spec, output_dir(out), n_workers, override_size, std::cout);
      std::cout << "summary: " << (output_dir(out) / "summary.csv").string() << " ("
                << records.size() << " runs)\n";
      return 0;
    }
    if (bnd->parsed()) {
      if (!config_path.empty()) {
        const AssimilationConfig cfg = parse_config(config_path).run;
        setup.nu = cfg.nu;
        setup.lambda1 = cfg.lambda1();
        setup.f_norm = cfg.grashof * cfg.nu * cfg.nu * cfg.lambda1();
        setup.c = cfg.c;
        setup.c_tilde = cfg.c_tilde;
        if (bnd->count("--mu") == 0) mu = cfg.mu;
      }
      const auto report = bounds::bounds_report(setup, mu, tau);
      std::cout << (as_json ? render_bounds_json(report) + "\n" : render_bounds_text(report));
      return 0;
    }
    if (verify->parsed()) {
      return cmd_verify(std::cout).all_passed() ? 0 : 1;
    }
    if (plot->parsed()) {
      const fs::path dir = output_dir(out);
      const fs::path target = plot_file.empty() ? dir / "plot_data.csv" : fs::path(plot_file);
      emit_plot_data(load_records(dir), target);
      std::cout << "wrote " << target.string() << "\n";
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

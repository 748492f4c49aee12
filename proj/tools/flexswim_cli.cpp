// flexswim: run slender-swimmer simulations and Purcell controllability scans.
//
//   flexswim simulate     --config run.json [--out DIR] [--mode paper|full] [--seedless]
//   flexswim purcell-scan --config run.json [--out DIR] [--seedless]
//   flexswim sweep        --config run.json --param c3 --values 0.05,0.0667 [--out DIR]
//
// Exit codes: 0 ok, 2 configuration error, 3 numerical failure.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flexswim/app.hpp"
#include "flexswim/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonArgs {
  std::string config;
  std::string out;
  std::string mode;
  bool seedless = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_mode) {
  cmd->add_option("--config", args.config, "run configuration (JSON)")->required();
  cmd->add_option("--out", args.out, "output directory (overrides output.dir)");
  if (with_mode) {
    cmd->add_option("--mode", args.mode, "coupling mode")->check(CLI::IsMember({"paper", "full"}));
  }
  cmd->add_flag("--seedless", args.seedless,
                "no randomness is used; re-run and verify the outputs are bit-identical");
}

flexswim::app::RunConfig resolve(const CommonArgs& args) {
  auto cfg = flexswim::app::load_config(args.config);
  if (!args.out.empty()) cfg.output_dir = args.out;
  if (args.mode == "paper") cfg.coupling = flexswim::Coupling::paper;
  if (args.mode == "full") cfg.coupling = flexswim::Coupling::full;
  return cfg;
}

template <class Fn>
int emit(const CommonArgs& args, const std::string& dir, Fn&& produce) {
  const flexswim::app::Artifacts files = produce();
  if (args.seedless && produce() != files) {
    std::cerr << "error: outputs differ between two identical runs\n";
    return kExitNumerical;
  }
  flexswim::app::write_artifacts(dir, files);
  for (const auto& [name, contents] : files) std::cout << dir << "/" << name << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Slender flexible swimmer simulator"};
  cli.require_subcommand(1);
  cli.set_version_flag("--version", flexswim::app::kVersion);

  CommonArgs sim_args, scan_args, sweep_args;
  std::string sweep_param;
  std::vector<double> sweep_values;

  auto* sim = cli.add_subcommand("simulate", "integrate the head pose for a shape program");
  add_common(sim, sim_args, true);
  auto* scan = cli.add_subcommand("purcell-scan", "rank conditions over a joint-angle grid");
  add_common(scan, scan_args, true);
  auto* sw = cli.add_subcommand("sweep", "repeat the simulation over values of one parameter");
  add_common(sw, sweep_args, true);
  sw->add_option("--param", sweep_param, "parameter to vary")
      ->check(CLI::IsMember(flexswim::app::sweep_parameters()));
  sw->add_option("--values", sweep_values, "comma-separated values")->delimiter(',');

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sim) {
      const auto cfg = resolve(sim_args);
      return emit(sim_args, cfg.output_dir, [&] { return flexswim::app::run_simulate(cfg).files; });
    }
    if (*scan) {
      const auto cfg = resolve(scan_args);
      return emit(scan_args, cfg.output_dir, [&] { return flexswim::app::run_purcell_scan(cfg); });
    }
    if (*sw) {
      const auto cfg = resolve(sweep_args);
      const std::string param = sweep_param.empty() ? cfg.sweep_param : sweep_param;
      const std::vector<double> values = sweep_values.empty() ? cfg.sweep_values : sweep_values;
      if (param.empty()) throw flexswim::app::ConfigError("sweep.param", "no sweep parameter given");
      return emit(sweep_args, cfg.output_dir,
                  [&] { return flexswim::app::run_sweep(cfg, param, values); });
    }
  } catch (const flexswim::app::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const flexswim::SimulationError& e) {
    std::cerr << "numerical failure " << e.what() << "\n";
    return kExitNumerical;
  } catch (const flexswim::SingularSystemError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}

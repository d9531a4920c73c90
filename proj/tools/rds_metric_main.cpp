// rds-metric: CLI front end for the random-dynamical-system metric library.
//
// Usage: rds-metric <subcommand> --config <file> [--out <dir>] [--seed <u64>]
//                   [--threads <n>]
// Exit codes: 0 success, 2 config error, 3 data error.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rdsm/errors.hpp"
#include "rdsm/experiments.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "configuration file (key = value or JSON)")
      ->required();
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--seed", args.seed, "override the config seed")
      ->each([&args](const std::string&) { args.seed_set = true; });
  cmd->add_option("--threads", args.threads, "worker count")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metrics and independence criteria for random dynamical systems"};
  app.require_subcommand(1);

  CommonArgs args;
  using Runner = void (*)(const rdsm::Config&, const rdsm::RunOptions&);
  struct Sub {
    const char* name;
    const char* help;
    Runner runner;
  };
  const Sub subs[] = {
      {"simulate", "generate a seeded path ensemble CSV", &rdsm::run_simulate},
      {"metric", "normalized metric between two ensemble CSVs", &rdsm::run_metric},
      {"distmat", "distance matrix over a list of ensemble CSVs", &rdsm::run_distmat},
      {"rotation-grid", "9x9 rotation-dynamics similarity panels", &rdsm::run_rotation_grid},
      {"indep-curve", "independence statistics along a mixing-angle grid", &rdsm::run_independence_curve},
      {"indep-grid9", "81 independence-curve panels over system pairs", &rdsm::run_independence_grid9},
      {"ucr-distmat", "distance matrices over a UCR dataset", &rdsm::run_ucr_distmat},
  };
  Runner selected = nullptr;
  for (const auto& sub : subs) {
    CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
    add_common(cmd, args);
    cmd->callback([&selected, &sub] { selected = sub.runner; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const rdsm::Config cfg = rdsm::Config::from_file(args.config_path);
    rdsm::RunOptions opts;
    opts.out_dir = args.out_dir;
    opts.threads = args.threads;
    if (args.seed_set) opts.seed = args.seed;
    selected(cfg, opts);
  } catch (const rdsm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const rdsm::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

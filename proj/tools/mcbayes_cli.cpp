// Command-line front end: mcbayes <command> --config <path> [--seed N] [--out path]
//
// Exit codes: 0 success, 2 configuration error, 3 degenerate model
// (non-ergodic chain or zero-mass posterior), 1 anything else.

#include "mcbayes/commands.hpp"
#include "mcbayes/errors.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDegenerate = 3;

struct Args {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  unsigned threads = 1;
  bool timing = false;
};

int run(mcbayes::Command command, const Args& args) {
  auto config = mcbayes::load_config(args.config);
  if (args.seed) config.master_seed = *args.seed;
  if (!args.out.empty()) config.output = args.out;

  mcbayes::RunOptions options;
  options.threads = args.threads == 0 ? std::max(1U, std::thread::hardware_concurrency())
                                      : args.threads;
  options.record_timing = args.timing;

  if (config.output.empty() || config.output == "-") {
    mcbayes::run_command(command, config, std::cout, options);
    return 0;
  }
  // A failed run must not leave a partial CSV behind.
  const std::string tmp = config.output + ".partial";
  try {
    std::ofstream file(tmp, std::ios::binary);
    if (!file) throw mcbayes::ConfigError("cannot open output file " + config.output);
    mcbayes::run_command(command, config, file, options);
  } catch (...) {
    std::filesystem::remove(tmp);
    throw;
  }
  std::filesystem::rename(tmp, config.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian estimation for parameterized ergodic Markov chains"};
  app.require_subcommand(1);

  Args args;
  const char* names[] = {"identify", "consistency", "lln", "ergodicity",
                         "martingale"};
  const char* help[] = {
      "check injectivity of theta -> P and theta -> F over the prior grid",
      "posterior-mean consistency experiment",
      "empirical pair d.f. convergence experiment",
      "total-variation decay of mu0 P^t towards the invariant law",
      "Levy-Doob martingale check of the posterior mean"};
  for (std::size_t i = 0; i < std::size(names); ++i) {
    auto* sub = app.add_subcommand(names[i], help[i]);
    sub->add_option("--config", args.config, "experiment config (JSON)")->required();
    sub->add_option("--seed", args.seed, "override master_seed");
    sub->add_option("--out", args.out, "output CSV path ('-' for stdout)");
    sub->add_option("--threads", args.threads,
                    "worker threads for replications (0 = all cores)");
    sub->add_flag("--timing", args.timing, "record wall_ms instead of 0");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    const auto* sub = app.get_subcommands().front();
    return run(mcbayes::parse_command(sub->get_name()), args);
  } catch (const mcbayes::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const mcbayes::DegenerateModelError& e) {
    std::cerr << "degenerate model: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

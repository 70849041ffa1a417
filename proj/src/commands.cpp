#include "mcbayes/commands.hpp"

#include "mcbayes/csv_io.hpp"
#include "mcbayes/errors.hpp"

#include <ostream>
#include <string>

namespace mcbayes {

Command parse_command(std::string_view name) {
  if (name == "identify") return Command::kIdentify;
  if (name == "consistency") return Command::kConsistency;
  if (name == "lln") return Command::kLln;
  if (name == "ergodicity") return Command::kErgodicity;
  if (name == "martingale") return Command::kMartingale;
  throw ConfigError("unknown command '" + std::string(name) + "'");
}

void run_command(Command command, const ExperimentConfig& config,
                 std::ostream& out, const RunOptions& options) {
  config.validate();
  const ChainFamily family = build_family(config.family);
  switch (command) {
    case Command::kIdentify: {
      if (!config.prior) throw ConfigError("identify needs a 'prior' grid");
      const PriorSpec prior = build_prior(family, *config.prior);
      write_identifiability_csv(out, check_identifiability(family, prior.grid()));
      break;
    }
    case Command::kConsistency:
      write_consistency_csv(out, run_consistency_experiment(config, options),
                            family.dimension());
      break;
    case Command::kLln:
      write_lln_csv(out, run_lln_experiment(config, options), family.dimension());
      break;
    case Command::kErgodicity: {
      if (config.theta.empty()) throw ConfigError("ergodicity needs 'theta'");
      const ParamPoint& theta = config.theta.front();
      const TransitionMatrix p = family.transition_matrix(theta);
      if (!is_ergodic_structure(p)) {
        throw NonErgodicError("theta gives a non-ergodic transition matrix");
      }
      const Dist mu0 = initial_distribution(config.initial.value_or("delta:0"), p);
      write_ergodicity_csv(
          out, run_ergodicity_diagnostic(family, theta, mu0, config.t_max));
      break;
    }
    case Command::kMartingale: {
      if (!config.prior) throw ConfigError("martingale needs a 'prior'");
      if (config.n_schedule.size() != 2) {
        throw ConfigError("martingale needs n_schedule = [n1, n2]");
      }
      const PriorSpec prior = build_prior(family, *config.prior);
      write_martingale_csv(
          out, martingale_gap(family, prior, config.n_schedule[0],
                              config.n_schedule[1], config.replications,
                              config.master_seed, options.threads));
      break;
    }
  }
}

}  // namespace mcbayes

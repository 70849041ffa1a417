#pragma once

#include "mcbayes/config.hpp"
#include "mcbayes/experiment.hpp"

#include <iosfwd>
#include <string_view>

namespace mcbayes {

enum class Command { kIdentify, kConsistency, kLln, kErgodicity, kMartingale };

/// Throws ConfigError for an unknown name.
Command parse_command(std::string_view name);

/// Runs one command and writes its CSV to `out`.
///
///   identify     prior grid of `family`; identifiability report
///   consistency  run_consistency_experiment
///   lln          run_lln_experiment
///   ergodicity   theta[0], initial (default "delta:0"), t_max
///   martingale   prior, n_schedule = [n1, n2], replications, master_seed
void run_command(Command command, const ExperimentConfig& config,
                 std::ostream& out, const RunOptions& options = {});

}  // namespace mcbayes

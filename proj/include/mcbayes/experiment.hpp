#pragma once

#include "mcbayes/bayes.hpp"
#include "mcbayes/chain_model.hpp"
#include "mcbayes/config.hpp"
#include "mcbayes/stationary.hpp"

#include <cstddef>
#include <limits>
#include <vector>

namespace mcbayes {

struct RunOptions {
  unsigned threads = 1;
  /// When false the wall_ms column is written as 0 so that repeated runs
  /// produce byte-identical output.
  bool record_timing = false;
};

/// One (replication, n) row. `theta_hat` and `error` are empty for LLN runs
/// and NaN-filled when the posterior was degenerate.
struct ExperimentRecord {
  std::size_t replication = 0;
  std::size_t n = 0;
  ParamPoint theta;
  std::vector<double> theta_hat;
  std::vector<double> error;
  double sup_discrepancy = 0.0;
  double posterior_entropy = 0.0;
  double wall_ms = 0.0;
  bool degenerate = false;
};

inline constexpr double kIdentifiabilityGapThreshold = 1e-12;

struct IdentifiabilityViolation {
  std::size_t first = 0;
  std::size_t second = 0;
  double matrix_gap = 0.0;
  double df_gap = 0.0;
};

struct IdentifiabilityReport {
  std::size_t grid_size = 0;
  std::size_t pairs_compared = 0;
  /// +inf when fewer than two ergodic points were compared.
  double min_matrix_gap = std::numeric_limits<double>::infinity();
  double min_df_gap = std::numeric_limits<double>::infinity();
  std::vector<IdentifiabilityViolation> violations;
  std::vector<std::size_t> non_ergodic_points;
  bool complete = true;
};

/// Compares every pair of distinct grid points by max |P - P'| and by the
/// sup-distance of their invariant pair d.f.s. A pair whose gap (either one)
/// falls below kIdentifiabilityGapThreshold is a violation. Non-ergodic points
/// are listed, left out of the comparison and mark the report incomplete.
IdentifiabilityReport check_identifiability(const ChainFamily& family,
                                            const std::vector<ParamPoint>& grid);

/// For each replication: draw theta (from the prior, or cycle through the
/// fixed list), simulate one trajectory of length max(n_schedule) and evaluate
/// the posterior mean on every prefix. Rows come back ordered by
/// (replication, n) whatever the thread count.
std::vector<ExperimentRecord> run_consistency_experiment(
    const ExperimentConfig& config, const RunOptions& options = {});

/// Same sampling scheme, recording only sup |F_n - F^theta|.
std::vector<ExperimentRecord> run_lln_experiment(const ExperimentConfig& config,
                                                 const RunOptions& options = {});

struct ErgodicityRow {
  int t = 0;
  double tv = 0.0;
};

std::vector<ErgodicityRow> run_ergodicity_diagnostic(const ChainFamily& family,
                                                     const ParamPoint& theta,
                                                     const Dist& mu0, int t_max);

/// Per-coordinate medians of `error` over replications at each n of the
/// schedule (rows with a degenerate posterior are skipped). Indexed
/// [schedule position][coordinate].
std::vector<std::vector<double>> median_errors(
    const std::vector<ExperimentRecord>& records,
    const std::vector<std::size_t>& n_schedule);

/// Median sup-discrepancy at each n of the schedule.
std::vector<double> median_discrepancies(
    const std::vector<ExperimentRecord>& records,
    const std::vector<std::size_t>& n_schedule);

double median(std::vector<double> values);

}  // namespace mcbayes

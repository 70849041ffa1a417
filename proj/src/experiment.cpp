#include "mcbayes/experiment.hpp"

#include "mcbayes/empirical.hpp"
#include "mcbayes/errors.hpp"
#include "mcbayes/parallel.hpp"
#include "mcbayes/sampling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>

namespace mcbayes {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::vector<ExperimentRecord> run_replications(const ExperimentConfig& config,
                                               const RunOptions& options,
                                               bool with_posterior) {
  config.validate();
  if (config.n_schedule.empty()) throw ConfigError("n_schedule is empty");
  const ChainFamily family = build_family(config.family);
  for (const auto& t : config.theta) {
    if (!family.contains(t)) {
      throw ConfigError("fixed theta lies outside the family domain");
    }
  }

  std::optional<PriorSpec> prior;
  if (config.prior) prior = build_prior(family, *config.prior);
  if (with_posterior && !prior) {
    throw ConfigError("consistency experiment needs a 'prior'");
  }
  if (config.theta_mode == ThetaMode::kSampledFromPrior && !prior) {
    throw ConfigError("theta_mode 'sampled-from-prior' needs a 'prior'");
  }
  std::optional<GridLikelihood> model;
  if (with_posterior) {
    for (const auto& g : prior->grid()) {
      if (!is_ergodic_structure(family.transition_matrix(g))) {
        throw NonErgodicError("family is not ergodic on every prior grid point");
      }
    }
    model.emplace(family, *prior, config.likelihood_initial);
  }

  const std::size_t n_max = config.n_schedule.back();
  const std::string initial = config.initial.value_or("stationary");
  std::vector<std::vector<ExperimentRecord>> per_rep(config.replications);

  parallel_for(config.replications, options.threads, [&](std::size_t r) {
    RngStream stream = substream(config.master_seed, r);
    ParamPoint theta;
    if (config.theta_mode == ThetaMode::kSampledFromPrior) {
      const std::size_t g =
          inverse_cdf(prior->weights().data(), prior->size(), stream.uniform());
      theta = prior->grid()[g];
    } else {
      theta = config.theta[r % config.theta.size()];
    }
    auto start = Clock::now();
    const TransitionMatrix p = family.transition_matrix(theta);
    const PairDF target = invariant_pair_df(p);
    const Trajectory traj =
        sample_trajectory(p, initial_distribution(initial, p), n_max, stream);

    PairCounts counts(family.state_space());
    counts.set_initial_state(traj.states.front());
    std::size_t seen = 0;
    auto& rows = per_rep[r];
    for (const std::size_t n : config.n_schedule) {
      for (; seen < n; ++seen) {
        counts.add(traj.states[seen], traj.states[seen + 1]);
      }
      ExperimentRecord rec;
      rec.replication = r;
      rec.n = n;
      rec.theta = theta;
      rec.sup_discrepancy = sup_discrepancy(empirical_pair_df(counts), target);
      if (with_posterior) {
        const std::size_t m = theta.dimension();
        try {
          const PosteriorState post = model->posterior(counts);
          const ParamPoint hat = posterior_mean(post, *prior);
          rec.theta_hat = hat.coords();
          rec.error.resize(m);
          for (std::size_t c = 0; c < m; ++c) {
            rec.error[c] = std::abs(rec.theta_hat[c] - theta[c]);
          }
          rec.posterior_entropy = post.entropy();
        } catch (const DegeneratePosteriorError&) {
          rec.degenerate = true;
          rec.theta_hat.assign(m, std::nan(""));
          rec.error.assign(m, std::nan(""));
          rec.posterior_entropy = std::nan("");
        }
      }
      if (options.record_timing) {
        rec.wall_ms = elapsed_ms(start);
        start = Clock::now();
      }
      rows.push_back(std::move(rec));
    }
  });

  std::vector<ExperimentRecord> out;
  out.reserve(config.replications * config.n_schedule.size());
  for (auto& rows : per_rep) {
    for (auto& rec : rows) out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

IdentifiabilityReport check_identifiability(const ChainFamily& family,
                                            const std::vector<ParamPoint>& grid) {
  IdentifiabilityReport report;
  report.grid_size = grid.size();
  std::vector<std::size_t> kept;
  std::vector<TransitionMatrix> matrices;
  std::vector<PairDF> dfs;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    TransitionMatrix p = family.transition_matrix(grid[i]);
    if (!is_ergodic_structure(p)) {
      report.non_ergodic_points.push_back(i);
      report.complete = false;
      continue;
    }
    dfs.push_back(invariant_pair_df(p));
    matrices.push_back(std::move(p));
    kept.push_back(i);
  }
  for (std::size_t a = 0; a < kept.size(); ++a) {
    for (std::size_t b = a + 1; b < kept.size(); ++b) {
      const double mg = max_entry_gap(matrices[a], matrices[b]);
      const double dg = sup_discrepancy(dfs[a], dfs[b]);
      ++report.pairs_compared;
      report.min_matrix_gap = std::min(report.min_matrix_gap, mg);
      report.min_df_gap = std::min(report.min_df_gap, dg);
      if (mg < kIdentifiabilityGapThreshold || dg < kIdentifiabilityGapThreshold) {
        report.violations.push_back({kept[a], kept[b], mg, dg});
      }
    }
  }
  return report;
}

std::vector<ExperimentRecord> run_consistency_experiment(
    const ExperimentConfig& config, const RunOptions& options) {
  return run_replications(config, options, true);
}

std::vector<ExperimentRecord> run_lln_experiment(const ExperimentConfig& config,
                                                 const RunOptions& options) {
  return run_replications(config, options, false);
}

std::vector<ErgodicityRow> run_ergodicity_diagnostic(const ChainFamily& family,
                                                     const ParamPoint& theta,
                                                     const Dist& mu0, int t_max) {
  const TransitionMatrix p = family.transition_matrix(theta);
  if (!is_ergodic_structure(p)) {
    throw NonErgodicError("theta gives a non-ergodic transition matrix");
  }
  const auto tv = tv_decay(p, mu0, t_max);
  std::vector<ErgodicityRow> rows;
  rows.reserve(tv.size());
  for (std::size_t t = 0; t < tv.size(); ++t) {
    rows.push_back({static_cast<int>(t), tv[t]});
  }
  return rows;
}

double median(std::vector<double> values) {
  if (values.empty()) return std::nan("");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid),
                   values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(
      values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

std::vector<std::vector<double>> median_errors(
    const std::vector<ExperimentRecord>& records,
    const std::vector<std::size_t>& n_schedule) {
  std::vector<std::vector<double>> out;
  for (const std::size_t n : n_schedule) {
    std::vector<std::vector<double>> per_coord;
    for (const auto& rec : records) {
      if (rec.n != n || rec.degenerate) continue;
      per_coord.resize(rec.error.size());
      for (std::size_t c = 0; c < rec.error.size(); ++c) {
        per_coord[c].push_back(rec.error[c]);
      }
    }
    std::vector<double> med;
    for (auto& v : per_coord) med.push_back(median(std::move(v)));
    out.push_back(std::move(med));
  }
  return out;
}

std::vector<double> median_discrepancies(
    const std::vector<ExperimentRecord>& records,
    const std::vector<std::size_t>& n_schedule) {
  std::vector<double> out;
  for (const std::size_t n : n_schedule) {
    std::vector<double> v;
    for (const auto& rec : records) {
      if (rec.n == n) v.push_back(rec.sup_discrepancy);
    }
    out.push_back(median(std::move(v)));
  }
  return out;
}

}  // namespace mcbayes

#pragma once

#include "mcbayes/chain_model.hpp"
#include "mcbayes/empirical.hpp"
#include "mcbayes/sampling.hpp"

#include <cstdint>
#include <vector>

namespace mcbayes {

/// Discretized prior: distinct grid points with probabilities summing to 1
/// within 1e-12. A finite grid always has a finite prior mean.
class PriorSpec {
 public:
  static constexpr double kTolerance = 1e-12;

  PriorSpec(std::vector<ParamPoint> grid, std::vector<double> weights);

  std::size_t size() const { return grid_.size(); }
  std::size_t dimension() const { return grid_.front().dimension(); }
  const std::vector<ParamPoint>& grid() const { return grid_; }
  const std::vector<double>& weights() const { return weights_; }

  /// Throws ConfigError if any grid point is outside the family's domain.
  void check_domain(const ChainFamily& family) const;

  /// Per-coordinate prior mean.
  ParamPoint mean() const;

 private:
  std::vector<ParamPoint> grid_;
  std::vector<double> weights_;
};

/// Tensor grid over the family's domain box with `points_per_axis[i]` values
/// on axis i. Closed axes include both ends (a single point sits at the
/// midpoint); open axes use the interior points lo + (j+1)(hi-lo)/(k+1).
std::vector<ParamPoint> domain_grid(const ChainFamily& family,
                                    const std::vector<std::size_t>& points_per_axis);

PriorSpec uniform_prior(std::vector<ParamPoint> grid);

/// Weights proportional to prod_ij p_ij^(alpha-1), the density of independent
/// Dirichlet(alpha) rows evaluated at P^theta for each grid point.
PriorSpec dirichlet_prior(const ChainFamily& family,
                          std::vector<ParamPoint> grid, double alpha);

/// Treatment of X_0 in the likelihood: ignored (ancillary) or scored under
/// the invariant law pi^theta.
enum class InitialTerm { kAncillary, kStationary };

struct PosteriorState {
  std::vector<double> log_weights;  // log prior + log likelihood, unnormalized
  std::vector<double> normalized_weights;
  double log_evidence = 0.0;
  std::uint64_t n = 0;

  double entropy() const;
};

/// Max-shifted normalization of unnormalized log weights. Throws
/// DegeneratePosteriorError when every entry is -inf.
PosteriorState posterior_from_log_weights(std::vector<double> log_weights,
                                          std::uint64_t n);

/// sum_ij c_ij log p_ij, skipping empty cells (so 0 log 0 = 0); -inf if an
/// observed transition has probability 0.
double log_likelihood(const TransitionMatrix& p, const PairCounts& counts,
                      InitialTerm initial = InitialTerm::kAncillary);

double log_likelihood(const ChainFamily& family, const ParamPoint& theta,
                      const Trajectory& traj,
                      InitialTerm initial = InitialTerm::kAncillary);

/// Log transition matrices (and log pi when needed) cached for every grid
/// point, so repeated posteriors cost one pass over the counts per point.
class GridLikelihood {
 public:
  GridLikelihood(const ChainFamily& family, const PriorSpec& prior,
                 InitialTerm initial = InitialTerm::kAncillary);

  std::size_t size() const { return log_prior_.size(); }
  const StateSpace& state_space() const { return states_; }

  /// Throws DegeneratePosteriorError when every grid point has zero mass.
  PosteriorState posterior(const PairCounts& counts) const;

 private:
  StateSpace states_;
  InitialTerm initial_;
  std::vector<double> log_prior_;
  std::vector<Matrix> log_p_;
  std::vector<Vector> log_pi_;
};

PosteriorState grid_posterior(const PriorSpec& prior, const ChainFamily& family,
                              const Trajectory& traj,
                              InitialTerm initial = InitialTerm::kAncillary);

/// Coordinatewise posterior mean, clamped to the grid's bounding box.
ParamPoint posterior_mean(const PosteriorState& post, const PriorSpec& prior);

/// Posterior mean of P under independent Dirichlet(alpha) rows:
/// (alpha + c_ij) / (size * alpha + sum_j c_ij).
TransitionMatrix dirichlet_posterior_mean(const PairCounts& counts, double alpha);

struct MartingaleGap {
  std::vector<double> mean;
  std::vector<double> std_error;
  std::size_t replications_used = 0;
  std::size_t replications_skipped = 0;
};

/// Mean and standard error of theta_hat_{n2} - theta_hat_{n1} over joint
/// draws theta ~ prior, X ~ P^theta started from pi^theta. The likelihood
/// scores X_0 under pi^theta so theta_hat_n is the exact conditional mean.
/// Replications are split across `threads` workers; the result does not
/// depend on the thread count.
MartingaleGap martingale_gap(const ChainFamily& family, const PriorSpec& prior,
                             std::size_t n1, std::size_t n2,
                             std::size_t replications, std::uint64_t seed,
                             unsigned threads = 1);

}  // namespace mcbayes

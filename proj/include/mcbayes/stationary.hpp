#pragma once

#include "mcbayes/chain_model.hpp"
#include "mcbayes/pair_df.hpp"

#include <vector>

namespace mcbayes {

/// Probability vector over a state space (weights >= 0, sum within 1e-10 of 1).
class Dist {
 public:
  static constexpr double kTolerance = 1e-10;

  Dist(Vector weights, StateSpace states);
  explicit Dist(Vector weights);

  static Dist delta(const StateSpace& states, std::size_t index);
  static Dist uniform(const StateSpace& states);

  std::size_t size() const { return states_.size(); }
  double operator[](std::size_t i) const {
    return weights_(static_cast<Eigen::Index>(i));
  }
  const Vector& weights() const { return weights_; }
  const StateSpace& state_space() const { return states_; }

 private:
  Vector weights_;
  StateSpace states_;
};

/// Stationary law of the pair (X_n, X_{n+1}): w_ij = pi(i) p_ij.
class PairDist {
 public:
  static constexpr double kTolerance = 1e-10;

  PairDist(Matrix weights, StateSpace states);

  const Matrix& weights() const { return weights_; }
  const StateSpace& state_space() const { return states_; }
  Vector row_marginal() const { return weights_.rowwise().sum(); }
  Vector column_marginal() const { return weights_.colwise().sum().transpose(); }

 private:
  Matrix weights_;
  StateSpace states_;
};

/// Up to this size pi is obtained from a dense linear solve of
/// (P^T - I) pi = 0 with one equation replaced by sum(pi) = 1; larger chains
/// use power iteration.
inline constexpr std::size_t kDirectSolveMaxSize = 200;
inline constexpr double kPowerIterationTolerance = 1e-12;
inline constexpr long kPowerIterationCap = 1'000'000;
inline constexpr double kStationaryResidualTolerance = 1e-10;

/// Unique pi with pi P = pi. Throws NonErgodicError unless
/// is_ergodic_structure(P), ConvergenceError if the residual check fails.
Dist invariant_measure(const TransitionMatrix& p);

PairDist pair_invariant(const TransitionMatrix& p);

/// F(x, x') = sum_{i <= x} pi(i) sum_{j <= x'} p_ij.
PairDF invariant_pair_df(const TransitionMatrix& p);

/// Total variation (factor-2 normalization, range [0,2]) between mu0 P^t and
/// pi for t = 0..t_max.
std::vector<double> tv_decay(const TransitionMatrix& p, const Dist& mu0,
                             int t_max);

/// ||pi P - pi||_inf.
double stationary_residual(const TransitionMatrix& p, const Dist& pi);

}  // namespace mcbayes

#include "mcbayes/stationary.hpp"

#include "mcbayes/errors.hpp"

#include <cmath>

namespace mcbayes {

namespace {

Vector solve_direct(const Matrix& p) {
  const auto n = p.rows();
  Matrix a = p.transpose() - Matrix::Identity(n, n);
  a.row(n - 1).setOnes();
  Vector b = Vector::Zero(n);
  b(n - 1) = 1.0;
  return a.partialPivLu().solve(b);
}

Vector solve_power(const Matrix& p) {
  const auto n = p.rows();
  Eigen::RowVectorXd pi =
      Eigen::RowVectorXd::Constant(n, 1.0 / static_cast<double>(n));
  for (long it = 0; it < kPowerIterationCap; ++it) {
    Eigen::RowVectorXd next = pi * p;
    next /= next.sum();
    const double change = (next - pi).cwiseAbs().maxCoeff();
    pi = std::move(next);
    if (change < kPowerIterationTolerance) return pi.transpose();
  }
  throw ConvergenceError("power iteration for the invariant measure did not "
                         "converge within the iteration cap");
}

}  // namespace

Dist::Dist(Vector weights, StateSpace states)
    : weights_(std::move(weights)), states_(std::move(states)) {
  if (weights_.size() != static_cast<Eigen::Index>(states_.size())) {
    throw ConfigError("distribution length does not match state space");
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!(weights_(i) >= 0.0)) {
      throw ConfigError("distribution has a negative or NaN weight");
    }
    sum += weights_(i);
  }
  if (std::abs(sum - 1.0) > kTolerance) {
    throw ConfigError("distribution weights do not sum to 1");
  }
}

Dist::Dist(Vector weights)
    : Dist(weights,
           StateSpace::integers(static_cast<std::size_t>(weights.size()))) {}

Dist Dist::delta(const StateSpace& states, std::size_t index) {
  if (index >= states.size()) throw ConfigError("delta index out of range");
  Vector w = Vector::Zero(static_cast<Eigen::Index>(states.size()));
  w(static_cast<Eigen::Index>(index)) = 1.0;
  return Dist(std::move(w), states);
}

Dist Dist::uniform(const StateSpace& states) {
  const auto n = static_cast<Eigen::Index>(states.size());
  return Dist(Vector::Constant(n, 1.0 / static_cast<double>(n)), states);
}

PairDist::PairDist(Matrix weights, StateSpace states)
    : weights_(std::move(weights)), states_(std::move(states)) {
  const auto n = static_cast<Eigen::Index>(states_.size());
  if (weights_.rows() != n || weights_.cols() != n) {
    throw ConfigError("pair distribution shape does not match state space");
  }
  if ((weights_.array() < 0.0).any() ||
      std::abs(weights_.sum() - 1.0) > kTolerance) {
    throw ConfigError("pair distribution is not a probability matrix");
  }
  if ((row_marginal() - column_marginal()).cwiseAbs().maxCoeff() > kTolerance) {
    throw ConfigError("pair distribution marginals differ");
  }
}

double stationary_residual(const TransitionMatrix& p, const Dist& pi) {
  const Eigen::RowVectorXd row = pi.weights().transpose();
  return (row * p.entries() - row).cwiseAbs().maxCoeff();
}

Dist invariant_measure(const TransitionMatrix& p) {
  if (!is_ergodic_structure(p)) {
    throw NonErgodicError("transition matrix is not irreducible and aperiodic");
  }
  Vector pi = p.size() <= kDirectSolveMaxSize ? solve_direct(p.entries())
                                              : solve_power(p.entries());
  // Round-off can leave entries of order -1e-17.
  pi = pi.cwiseMax(0.0);
  pi /= pi.sum();
  Dist out(std::move(pi), p.state_space());
  if (stationary_residual(p, out) >= kStationaryResidualTolerance) {
    throw ConvergenceError("invariant measure residual above tolerance");
  }
  return out;
}

PairDist pair_invariant(const TransitionMatrix& p) {
  const Dist pi = invariant_measure(p);
  Matrix w = pi.weights().asDiagonal() * p.entries();
  return PairDist(std::move(w), p.state_space());
}

PairDF invariant_pair_df(const TransitionMatrix& p) {
  return PairDF::from_cell_masses(pair_invariant(p).weights(), p.state_space());
}

std::vector<double> tv_decay(const TransitionMatrix& p, const Dist& mu0,
                             int t_max) {
  if (t_max < 0) throw ConfigError("t_max must be non-negative");
  if (mu0.size() != p.size()) {
    throw ConfigError("initial distribution does not match the chain");
  }
  const Eigen::RowVectorXd pi = invariant_measure(p).weights().transpose();
  Eigen::RowVectorXd law = mu0.weights().transpose();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(t_max) + 1);
  for (int t = 0; t <= t_max; ++t) {
    if (t > 0) law = law * p.entries();
    out.push_back((law - pi).cwiseAbs().sum());
  }
  return out;
}

}  // namespace mcbayes

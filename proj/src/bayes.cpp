#include "mcbayes/bayes.hpp"

#include "mcbayes/errors.hpp"
#include "mcbayes/parallel.hpp"
#include "mcbayes/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace mcbayes {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double safe_log(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

}  // namespace

PriorSpec::PriorSpec(std::vector<ParamPoint> grid, std::vector<double> weights)
    : grid_(std::move(grid)), weights_(std::move(weights)) {
  if (grid_.empty() || grid_.size() != weights_.size()) {
    throw ConfigError("prior needs matching, non-empty grid and weights");
  }
  const std::size_t m = grid_.front().dimension();
  double sum = 0.0;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (grid_[i].dimension() != m) {
      throw ConfigError("prior grid points have mixed dimensions");
    }
    if (!(weights_[i] >= 0.0)) {
      throw ConfigError("prior weight is negative or NaN");
    }
    sum += weights_[i];
  }
  if (std::abs(sum - 1.0) > kTolerance) {
    throw ConfigError("prior weights do not sum to 1");
  }
  std::vector<std::vector<double>> sorted;
  sorted.reserve(grid_.size());
  for (const auto& p : grid_) sorted.push_back(p.coords());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ConfigError("prior grid points must be distinct");
  }
}

void PriorSpec::check_domain(const ChainFamily& family) const {
  for (const auto& p : grid_) {
    if (!family.contains(p)) {
      throw ConfigError("prior grid point outside the domain of family '" +
                        family.name() + "'");
    }
  }
}

ParamPoint PriorSpec::mean() const {
  std::vector<double> acc(dimension(), 0.0);
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t c = 0; c < acc.size(); ++c) {
      acc[c] += weights_[i] * grid_[i][c];
    }
  }
  return ParamPoint(std::move(acc));
}

std::vector<ParamPoint> domain_grid(
    const ChainFamily& family, const std::vector<std::size_t>& points_per_axis) {
  const auto& box = family.domain();
  if (points_per_axis.size() != box.dimension()) {
    throw ConfigError("grid resolution has " +
                      std::to_string(points_per_axis.size()) +
                      " axes, family has " + std::to_string(box.dimension()));
  }
  std::vector<std::vector<double>> axes;
  for (std::size_t a = 0; a < box.dimension(); ++a) {
    const std::size_t k = points_per_axis[a];
    if (k == 0) throw ConfigError("grid axis needs at least one point");
    const Interval& iv = box.axis(a);
    std::vector<double> values(k);
    for (std::size_t j = 0; j < k; ++j) {
      if (iv.open) {
        values[j] = iv.lo + static_cast<double>(j + 1) * (iv.hi - iv.lo) /
                                static_cast<double>(k + 1);
      } else if (k == 1) {
        values[j] = 0.5 * (iv.lo + iv.hi);
      } else {
        // Endpoints are pinned so rounding cannot leave the box.
        values[j] = j + 1 == k ? iv.hi
                               : iv.lo + static_cast<double>(j) * (iv.hi - iv.lo) /
                                             static_cast<double>(k - 1);
      }
    }
    axes.push_back(std::move(values));
  }
  std::vector<ParamPoint> out;
  std::vector<std::size_t> idx(axes.size(), 0);
  while (true) {
    std::vector<double> coords(axes.size());
    for (std::size_t a = 0; a < axes.size(); ++a) coords[a] = axes[a][idx[a]];
    out.emplace_back(std::move(coords));
    std::size_t a = axes.size();
    while (a > 0) {
      --a;
      if (++idx[a] < axes[a].size()) break;
      idx[a] = 0;
      if (a == 0) return out;
    }
  }
}

PriorSpec uniform_prior(std::vector<ParamPoint> grid) {
  const double w = 1.0 / static_cast<double>(grid.size());
  std::vector<double> weights(grid.size(), w);
  return PriorSpec(std::move(grid), std::move(weights));
}

PriorSpec dirichlet_prior(const ChainFamily& family,
                          std::vector<ParamPoint> grid, double alpha) {
  if (!(alpha > 0.0)) throw ConfigError("Dirichlet alpha must be positive");
  if (grid.empty()) throw ConfigError("prior grid is empty");
  std::vector<double> log_w(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const Matrix p = family.transition_matrix(grid[g]).entries();
    double s = 0.0;
    if (alpha != 1.0) {
      for (Eigen::Index i = 0; i < p.rows(); ++i) {
        for (Eigen::Index j = 0; j < p.cols(); ++j) {
          s += (alpha - 1.0) * safe_log(p(i, j));
        }
      }
    }
    log_w[g] = s;
  }
  const double top = *std::max_element(log_w.begin(), log_w.end());
  if (!std::isfinite(top)) {
    throw ConfigError("Dirichlet prior has no finite density on the grid");
  }
  std::vector<double> w(grid.size());
  double sum = 0.0;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    w[g] = std::exp(log_w[g] - top);
    sum += w[g];
  }
  for (double& x : w) x /= sum;
  return PriorSpec(std::move(grid), std::move(w));
}

double PosteriorState::entropy() const {
  double h = 0.0;
  for (double w : normalized_weights) {
    if (w > 0.0) h -= w * std::log(w);
  }
  return h;
}

double log_likelihood(const TransitionMatrix& p, const PairCounts& counts,
                      InitialTerm initial) {
  if (counts.size() != p.size()) {
    throw ConfigError("counts and transition matrix have different sizes");
  }
  double ll = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (const auto c = counts(i, j); c > 0) {
        ll += static_cast<double>(c) * safe_log(p(i, j));
      }
    }
  }
  if (initial == InitialTerm::kStationary) {
    if (!counts.initial_state()) {
      throw ConfigError("stationary initial term needs the initial state");
    }
    ll += safe_log(invariant_measure(p)[*counts.initial_state()]);
  }
  return ll;
}

double log_likelihood(const ChainFamily& family, const ParamPoint& theta,
                      const Trajectory& traj, InitialTerm initial) {
  return log_likelihood(family.transition_matrix(theta),
                        pair_counts(traj, family.state_space()), initial);
}

GridLikelihood::GridLikelihood(const ChainFamily& family,
                               const PriorSpec& prior, InitialTerm initial)
    : states_(family.state_space()), initial_(initial) {
  prior.check_domain(family);
  log_prior_.reserve(prior.size());
  log_p_.reserve(prior.size());
  for (std::size_t g = 0; g < prior.size(); ++g) {
    const TransitionMatrix p = family.transition_matrix(prior.grid()[g]);
    log_prior_.push_back(safe_log(prior.weights()[g]));
    log_p_.push_back(p.entries().unaryExpr([](double x) { return safe_log(x); }));
    if (initial_ == InitialTerm::kStationary) {
      log_pi_.push_back(invariant_measure(p).weights().unaryExpr(
          [](double x) { return safe_log(x); }));
    }
  }
}

PosteriorState GridLikelihood::posterior(const PairCounts& counts) const {
  if (!(counts.state_space() == states_)) {
    throw ConfigError("counts do not match the family's state space");
  }
  const std::size_t k = states_.size();
  // Only the non-empty cells contribute.
  std::vector<std::pair<Eigen::Index, Eigen::Index>> cells;
  std::vector<double> weight;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (const auto c = counts(i, j); c > 0) {
        cells.emplace_back(static_cast<Eigen::Index>(i),
                           static_cast<Eigen::Index>(j));
        weight.push_back(static_cast<double>(c));
      }
    }
  }
  std::optional<Eigen::Index> x0;
  if (initial_ == InitialTerm::kStationary) {
    if (!counts.initial_state()) {
      throw ConfigError("stationary initial term needs the initial state");
    }
    x0 = static_cast<Eigen::Index>(*counts.initial_state());
  }

  std::vector<double> log_weights(size());
  for (std::size_t g = 0; g < size(); ++g) {
    double lw = log_prior_[g];
    if (lw != kNegInf) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        lw += weight[c] * log_p_[g](cells[c].first, cells[c].second);
      }
      if (x0) lw += log_pi_[g](*x0);
    }
    log_weights[g] = lw;
  }
  return posterior_from_log_weights(std::move(log_weights), counts.total());
}

PosteriorState posterior_from_log_weights(std::vector<double> log_weights,
                                          std::uint64_t n) {
  PosteriorState post;
  post.n = n;
  post.log_weights = std::move(log_weights);
  double top = kNegInf;
  for (double lw : post.log_weights) top = std::max(top, lw);
  if (top == kNegInf) {
    throw DegeneratePosteriorError(
        "every grid point assigns probability zero to the data");
  }
  post.normalized_weights.resize(post.log_weights.size());
  double sum = 0.0;
  for (std::size_t g = 0; g < post.log_weights.size(); ++g) {
    post.normalized_weights[g] = std::exp(post.log_weights[g] - top);
    sum += post.normalized_weights[g];
  }
  for (double& w : post.normalized_weights) w /= sum;
  post.log_evidence = top + std::log(sum);
  return post;
}

PosteriorState grid_posterior(const PriorSpec& prior, const ChainFamily& family,
                              const Trajectory& traj, InitialTerm initial) {
  if (traj.states.empty()) throw ConfigError("trajectory is empty");
  PairCounts counts(family.state_space());
  counts.set_initial_state(traj.states.front());
  for (std::size_t t = 0; t + 1 < traj.states.size(); ++t) {
    counts.add(traj.states[t], traj.states[t + 1]);
  }
  return GridLikelihood(family, prior, initial).posterior(counts);
}

ParamPoint posterior_mean(const PosteriorState& post, const PriorSpec& prior) {
  if (post.normalized_weights.size() != prior.size()) {
    throw ConfigError("posterior and prior have different grid sizes");
  }
  const std::size_t m = prior.dimension();
  std::vector<double> acc(m, 0.0);
  std::vector<double> lo(m, std::numeric_limits<double>::infinity());
  std::vector<double> hi(m, -std::numeric_limits<double>::infinity());
  double total = 0.0;
  for (std::size_t g = 0; g < prior.size(); ++g) {
    const double w = post.normalized_weights[g];
    total += w;
    for (std::size_t c = 0; c < m; ++c) {
      const double x = prior.grid()[g][c];
      acc[c] += w * x;
      lo[c] = std::min(lo[c], x);
      hi[c] = std::max(hi[c], x);
    }
  }
  if (!(total > 0.0)) {
    throw DegeneratePosteriorError("posterior has no mass");
  }
  for (std::size_t c = 0; c < m; ++c) acc[c] = std::clamp(acc[c], lo[c], hi[c]);
  return ParamPoint(std::move(acc));
}

TransitionMatrix dirichlet_posterior_mean(const PairCounts& counts,
                                          double alpha) {
  if (!(alpha > 0.0)) throw ConfigError("Dirichlet alpha must be positive");
  const std::size_t k = counts.size();
  const auto n = static_cast<Eigen::Index>(k);
  Matrix out(n, n);
  for (std::size_t i = 0; i < k; ++i) {
    const double denom = static_cast<double>(k) * alpha +
                         static_cast<double>(counts.row_total(i));
    for (std::size_t j = 0; j < k; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          (alpha + static_cast<double>(counts(i, j))) / denom;
    }
  }
  return TransitionMatrix(std::move(out), counts.state_space());
}

MartingaleGap martingale_gap(const ChainFamily& family, const PriorSpec& prior,
                             std::size_t n1, std::size_t n2,
                             std::size_t replications, std::uint64_t seed,
                             unsigned threads) {
  if (n1 < 1 || n2 < n1) throw ConfigError("martingale gap needs 1 <= n1 <= n2");
  if (replications < 2) throw ConfigError("martingale gap needs >= 2 replications");
  const GridLikelihood model(family, prior, InitialTerm::kStationary);
  const std::size_t m = prior.dimension();

  std::vector<std::optional<std::vector<double>>> diffs(replications);
  parallel_for(replications, threads, [&](std::size_t r) {
    RngStream stream = substream(seed, r);
    const std::size_t g =
        inverse_cdf(prior.weights().data(), prior.size(), stream.uniform());
    const TransitionMatrix p = family.transition_matrix(prior.grid()[g]);
    const Trajectory traj =
        sample_trajectory(p, invariant_measure(p), n2, stream);
    try {
      const ParamPoint early =
          posterior_mean(model.posterior(pair_counts(traj, family.state_space(), n1)), prior);
      const ParamPoint late =
          posterior_mean(model.posterior(pair_counts(traj, family.state_space(), n2)), prior);
      std::vector<double> d(m);
      for (std::size_t c = 0; c < m; ++c) d[c] = late[c] - early[c];
      diffs[r] = std::move(d);
    } catch (const DegeneratePosteriorError&) {
      diffs[r].reset();
    }
  });

  MartingaleGap out;
  out.mean.assign(m, 0.0);
  out.std_error.assign(m, 0.0);
  for (const auto& d : diffs) {
    if (!d) {
      ++out.replications_skipped;
      continue;
    }
    ++out.replications_used;
    for (std::size_t c = 0; c < m; ++c) out.mean[c] += (*d)[c];
  }
  if (out.replications_used < 2) {
    throw DegeneratePosteriorError("too few non-degenerate replications");
  }
  const auto used = static_cast<double>(out.replications_used);
  for (double& x : out.mean) x /= used;
  for (const auto& d : diffs) {
    if (!d) continue;
    for (std::size_t c = 0; c < m; ++c) {
      const double e = (*d)[c] - out.mean[c];
      out.std_error[c] += e * e;
    }
  }
  for (double& s : out.std_error) s = std::sqrt(s / (used - 1.0) / used);
  return out;
}

}  // namespace mcbayes

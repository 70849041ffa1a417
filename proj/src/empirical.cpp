#include "mcbayes/empirical.hpp"

#include "mcbayes/errors.hpp"

#include <algorithm>

namespace mcbayes {

PairCounts::PairCounts(StateSpace states)
    : states_(std::move(states)), counts_(states_.size() * states_.size(), 0) {}

PairCounts::PairCounts(StateSpace states,
                       const std::vector<std::vector<std::uint64_t>>& counts,
                       std::optional<std::size_t> initial_state)
    : PairCounts(std::move(states)) {
  if (counts.size() != size()) {
    throw ConfigError("count matrix shape does not match state space");
  }
  for (std::size_t i = 0; i < size(); ++i) {
    if (counts[i].size() != size()) {
      throw ConfigError("count matrix shape does not match state space");
    }
    for (std::size_t j = 0; j < size(); ++j) {
      counts_[i * size() + j] = counts[i][j];
      total_ += counts[i][j];
    }
  }
  if (initial_state) set_initial_state(*initial_state);
}

std::uint64_t PairCounts::row_total(std::size_t i) const {
  std::uint64_t s = 0;
  for (std::size_t j = 0; j < size(); ++j) s += counts_[i * size() + j];
  return s;
}

void PairCounts::add(std::size_t from, std::size_t to) {
  if (from >= size() || to >= size()) {
    throw ConfigError("state index outside the state space");
  }
  ++counts_[from * size() + to];
  ++total_;
}

void PairCounts::set_initial_state(std::size_t state) {
  if (state >= size()) throw ConfigError("state index outside the state space");
  initial_ = state;
}

PairCounts pair_counts(const Trajectory& traj, const StateSpace& states,
                       std::size_t n) {
  if (traj.states.size() < 2) {
    throw ConfigError("trajectory needs at least two states");
  }
  if (n < 1 || n > traj.transitions()) {
    throw ConfigError("prefix length outside the trajectory");
  }
  PairCounts out(states);
  out.set_initial_state(traj.states.front());
  for (std::size_t t = 0; t < n; ++t) {
    out.add(traj.states[t], traj.states[t + 1]);
  }
  return out;
}

PairCounts pair_counts(const Trajectory& traj, const StateSpace& states) {
  if (traj.states.size() < 2) {
    throw ConfigError("trajectory needs at least two states");
  }
  return pair_counts(traj, states, traj.transitions());
}

PairDF empirical_pair_df(const PairCounts& counts) {
  if (counts.total() == 0) {
    throw ConfigError("empirical d.f. needs at least one transition");
  }
  const std::size_t k = counts.size();
  const auto n = static_cast<Eigen::Index>(k);
  // Cumulate in integers so the top corner is exactly N/N = 1.
  std::vector<std::uint64_t> cum((k + 1) * (k + 1), 0);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint64_t& {
    return cum[i * (k + 1) + j];
  };
  for (std::size_t i = 1; i <= k; ++i) {
    std::uint64_t row = 0;
    for (std::size_t j = 1; j <= k; ++j) {
      row += counts(i - 1, j - 1);
      at(i, j) = at(i - 1, j) + row;
    }
  }
  const double total = static_cast<double>(counts.total());
  Matrix grid(n + 1, n + 1);
  for (Eigen::Index i = 0; i <= n; ++i) {
    for (Eigen::Index j = 0; j <= n; ++j) {
      grid(i, j) = static_cast<double>(at(static_cast<std::size_t>(i),
                                          static_cast<std::size_t>(j))) /
                   total;
    }
  }
  return PairDF(std::move(grid), counts.state_space());
}

double sup_discrepancy(const PairDF& f, const PairDF& g) {
  if (!(f.state_space() == g.state_space())) {
    throw ConfigError("pair d.f.s live on different state spaces");
  }
  return (f.grid() - g.grid()).cwiseAbs().maxCoeff();
}

}  // namespace mcbayes

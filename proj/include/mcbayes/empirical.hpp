#pragma once

#include "mcbayes/chain_model.hpp"
#include "mcbayes/pair_df.hpp"
#include "mcbayes/sampling.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace mcbayes {

/// Transition counts c_ij = #{t < N : X_t = i, X_{t+1} = j} together with the
/// initial state of the trajectory they came from.
class PairCounts {
 public:
  explicit PairCounts(StateSpace states);
  /// Counts given as a dense matrix; `initial_state` is optional.
  PairCounts(StateSpace states, const std::vector<std::vector<std::uint64_t>>& counts,
             std::optional<std::size_t> initial_state = std::nullopt);

  const StateSpace& state_space() const { return states_; }
  std::size_t size() const { return states_.size(); }
  std::uint64_t total() const { return total_; }
  std::uint64_t operator()(std::size_t i, std::size_t j) const {
    return counts_[i * size() + j];
  }
  std::uint64_t row_total(std::size_t i) const;
  std::optional<std::size_t> initial_state() const { return initial_; }

  void add(std::size_t from, std::size_t to);
  void set_initial_state(std::size_t state);

  bool operator==(const PairCounts&) const = default;

 private:
  StateSpace states_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
  std::optional<std::size_t> initial_;
};

/// Counts over the whole trajectory. Throws if it has fewer than 2 states or an
/// index outside the state space.
PairCounts pair_counts(const Trajectory& traj, const StateSpace& states);

/// Counts over the prefix X_0..X_n.
PairCounts pair_counts(const Trajectory& traj, const StateSpace& states,
                       std::size_t n);

/// F_N(x, x') = (1/N) sum_{t<N} 1(X_t <= x, X_{t+1} <= x'). Throws when N = 0.
PairDF empirical_pair_df(const PairCounts& counts);

/// max over the cumulative grid of |F - G|; equivalently the largest
/// discrepancy over rectangles (-inf,x] x (-inf,x'].
double sup_discrepancy(const PairDF& f, const PairDF& g);

}  // namespace mcbayes

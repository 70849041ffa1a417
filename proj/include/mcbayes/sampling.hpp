#pragma once

#include "mcbayes/chain_model.hpp"
#include "mcbayes/stationary.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace mcbayes {

/// Reproducible random stream for one replication.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Its seed is derived statelessly from (master_seed, replication):
///
///   z = master_seed + (replication + 1) * 0x9E3779B97F4A7C15   (mod 2^64)
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   seed = z ^ (z >> 31)
///
/// (the splitmix64 finalizer). Uniform draws take the top 53 bits of one
/// engine output: u = (x >> 11) * 2^-53, so u lies in [0, 1).
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t replication);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t replication() const { return replication_; }
  std::uint64_t derived_seed() const { return derived_seed_; }

  std::uint64_t next_u64() { return engine_(); }
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t master_seed_;
  std::uint64_t replication_;
  std::uint64_t derived_seed_;
  std::mt19937_64 engine_;
};

std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                 std::uint64_t replication);

RngStream substream(std::uint64_t master_seed, std::uint64_t replication);

/// States X_0..X_n as indices into the chain's state space.
struct Trajectory {
  std::vector<std::size_t> states;
  std::uint64_t master_seed = 0;
  std::uint64_t replication = 0;

  std::size_t transitions() const {
    return states.empty() ? 0 : states.size() - 1;
  }
};

/// Index of the first category whose cumulative weight exceeds u. Falls back
/// to the last positive-weight category when round-off leaves u above the
/// total.
std::size_t inverse_cdf(const double* weights, std::size_t count, double u);

/// X_0 ~ mu0, then X_{t+1} drawn from row X_t of P; exactly one uniform per
/// draw (n + 1 in total).
Trajectory sample_trajectory(const TransitionMatrix& p, const Dist& mu0,
                             std::size_t n, RngStream& stream);

}  // namespace mcbayes

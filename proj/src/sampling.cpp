#include "mcbayes/sampling.hpp"

#include "mcbayes/errors.hpp"

namespace mcbayes {

std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                 std::uint64_t replication) {
  std::uint64_t z = master_seed + (replication + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t replication)
    : master_seed_(master_seed),
      replication_(replication),
      derived_seed_(derive_stream_seed(master_seed, replication)),
      engine_(derived_seed_) {}

RngStream substream(std::uint64_t master_seed, std::uint64_t replication) {
  return RngStream(master_seed, replication);
}

std::size_t inverse_cdf(const double* weights, std::size_t count, double u) {
  double cum = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t j = 0; j < count; ++j) {
    if (weights[j] > 0.0) {
      cum += weights[j];
      last_positive = j;
      if (u < cum) return j;
    }
  }
  return last_positive;
}

Trajectory sample_trajectory(const TransitionMatrix& p, const Dist& mu0,
                             std::size_t n, RngStream& stream) {
  if (n < 1) throw ConfigError("trajectory needs at least one transition");
  if (mu0.size() != p.size()) {
    throw ConfigError("initial distribution does not match the chain");
  }
  const std::size_t k = p.size();
  // Row-major copy so each row is contiguous.
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
      rows = p.entries();

  Trajectory traj;
  traj.master_seed = stream.master_seed();
  traj.replication = stream.replication();
  traj.states.reserve(n + 1);
  std::size_t x = inverse_cdf(mu0.weights().data(), k, stream.uniform());
  traj.states.push_back(x);
  for (std::size_t t = 0; t < n; ++t) {
    x = inverse_cdf(rows.data() + x * k, k, stream.uniform());
    traj.states.push_back(x);
  }
  return traj;
}

}  // namespace mcbayes

#include "mcbayes/empirical.hpp"
#include "mcbayes/errors.hpp"
#include "mcbayes/sampling.hpp"
#include "mcbayes/stationary.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>

namespace mcbayes {
namespace {

TransitionMatrix two_state(double p, double q) {
  Matrix m(2, 2);
  m << 1 - p, p, q, 1 - q;
  return TransitionMatrix(m);
}

TEST(RngStreamTest, SameSeedSameSequence) {
  RngStream a(42, 3), b(42, 3);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(RngStreamTest, UniformsInHalfOpenUnitInterval) {
  RngStream s(1, 0);
  for (int i = 0; i < 100000; ++i) {
    const double u = s.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RngStreamTest, NeighbouringReplicationsDecorrelate) {
  RngStream a(7, 0), b(7, 1);
  std::size_t differing = 0;
  constexpr int kWords = 1000;
  for (int i = 0; i < kWords; ++i) {
    differing += static_cast<std::size_t>(std::popcount(a.next_u64() ^ b.next_u64()));
  }
  EXPECT_GT(static_cast<double>(differing) / (64.0 * kWords), 0.45);
  EXPECT_NE(derive_stream_seed(7, 0), derive_stream_seed(7, 1));
  EXPECT_NE(derive_stream_seed(7, 0), derive_stream_seed(8, 0));
}

TEST(RngStreamTest, StreamDoesNotDependOnCreationOrder) {
  RngStream later(9, 5);
  RngStream first(9, 2);
  RngStream again(9, 5);
  (void)first.next_u64();
  EXPECT_EQ(later.next_u64(), again.next_u64());
}

TEST(InverseCdfTest, PicksFirstCategoryAboveU) {
  const double w[] = {0.25, 0.0, 0.75};
  EXPECT_EQ(inverse_cdf(w, 3, 0.0), 0u);
  EXPECT_EQ(inverse_cdf(w, 3, 0.2499), 0u);
  EXPECT_EQ(inverse_cdf(w, 3, 0.25), 2u);
  EXPECT_EQ(inverse_cdf(w, 3, 0.9999999), 2u);
}

TEST(SampleTrajectoryTest, DeterministicAlternation) {
  Matrix flip(2, 2);
  flip << 0, 1, 1, 0;
  RngStream s(1, 0);
  const auto traj = sample_trajectory(TransitionMatrix(flip),
                                      Dist::delta(StateSpace::integers(2), 0), 9, s);
  ASSERT_EQ(traj.states.size(), 10u);
  for (std::size_t t = 0; t < traj.states.size(); ++t) EXPECT_EQ(traj.states[t], t % 2);
}

TEST(SampleTrajectoryTest, AbsorbingIdentity) {
  RngStream s(2, 0);
  const auto traj = sample_trajectory(TransitionMatrix(Matrix::Identity(3, 3)),
                                      Dist::delta(StateSpace::integers(3), 1), 50, s);
  for (std::size_t x : traj.states) EXPECT_EQ(x, 1u);
}

TEST(SampleTrajectoryTest, ReproducibleAndTagged) {
  const auto p = two_state(0.2, 0.3);
  const Dist pi = invariant_measure(p);
  RngStream a(123, 4), b(123, 4), c(123, 5);
  const auto ta = sample_trajectory(p, pi, 1000, a);
  const auto tb = sample_trajectory(p, pi, 1000, b);
  const auto tc = sample_trajectory(p, pi, 1000, c);
  EXPECT_EQ(ta.states, tb.states);
  EXPECT_NE(ta.states, tc.states);
  EXPECT_EQ(ta.master_seed, 123u);
  EXPECT_EQ(ta.replication, 4u);
  EXPECT_EQ(ta.transitions(), 1000u);
}

TEST(SampleTrajectoryTest, ZeroLengthIsConfigError) {
  const auto p = two_state(0.2, 0.3);
  RngStream s(1, 0);
  EXPECT_THROW(sample_trajectory(p, invariant_measure(p), 0, s), ConfigError);
}

TEST(SampleTrajectoryTest, OccupationMatchesPi) {
  const auto p = two_state(0.2, 0.3);
  RngStream s(99, 0);
  const std::size_t n = 100000;
  const auto traj = sample_trajectory(p, invariant_measure(p), n, s);
  double zeros = 0.0;
  for (std::size_t x : traj.states) zeros += (x == 0);
  EXPECT_NEAR(zeros / static_cast<double>(traj.states.size()), 0.6, 0.01);
}

TEST(SampleTrajectoryTest, IndependentCaseWithinThreeSigma) {
  // p + q = 1 makes the steps i.i.d., so the binomial standard error applies.
  const auto p = two_state(0.4, 0.6);
  for (std::uint64_t rep = 0; rep < 5; ++rep) {
    RngStream s(2024, rep);
    const std::size_t n = 50000;
    const auto traj = sample_trajectory(p, invariant_measure(p), n, s);
    double zeros = 0.0;
    for (std::size_t x : traj.states) zeros += (x == 0);
    const double m = static_cast<double>(traj.states.size());
    EXPECT_NEAR(zeros / m, 0.6, 3.0 * std::sqrt(0.6 * 0.4 / m));
  }
}

TEST(SampleTrajectoryTest, TransitionFrequenciesPassChiSquare) {
  std::mt19937_64 rng(41);
  const Matrix m = testing::random_ergodic(3, rng);
  const TransitionMatrix p(m);
  RngStream s(77, 0);
  const auto traj = sample_trajectory(p, invariant_measure(p), 200000, s);
  const PairCounts c = pair_counts(traj, p.state_space());
  // Given the visits to i, the exits from i are i.i.d. draws from row i.
  constexpr double kChi2Df2Q999 = 13.8155;
  for (std::size_t i = 0; i < 3; ++i) {
    const double ni = static_cast<double>(c.row_total(i));
    double chi2 = 0.0;
    std::size_t support = 0;
    for (std::size_t j = 0; j < 3; ++j) {
      const double e = ni * p(i, j);
      if (e == 0.0) {
        EXPECT_EQ(c(i, j), 0u);
        continue;
      }
      ++support;
      const double d = static_cast<double>(c(i, j)) - e;
      chi2 += d * d / e;
    }
    if (support == 3) EXPECT_LT(chi2, kChi2Df2Q999);
  }
}

}  // namespace
}  // namespace mcbayes

#include "mcbayes/bayes.hpp"
#include "mcbayes/errors.hpp"
#include "mcbayes/stationary.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace mcbayes {
namespace {

const StateSpace kTwo = StateSpace::integers(2);

ChainFamily two_state() { return build_family({"two_state", {}, {}}); }

// theta = a in [0, 1]; row 0 is (1 - a, a), row 1 is (1/2, 1/2). a = 0 makes
// the transition 0 -> 1 impossible.
ChainFamily gate_family() {
  return ChainFamily("gate", DomainBox({{0.0, 1.0, false}}), kTwo,
                     [](std::span<const double> t) {
                       Matrix m(2, 2);
                       m << 1 - t[0], t[0], 0.5, 0.5;
                       return m;
                     });
}

Trajectory make(std::vector<std::size_t> states) {
  Trajectory t;
  t.states = std::move(states);
  return t;
}

TEST(LogLikelihoodTest, CountsFormula) {
  const auto p = two_state().transition_matrix({0.2, 0.3});
  const PairCounts c(kTwo, {{3, 1}, {2, 4}}, 0);
  const double expected =
      3 * std::log(0.8) + std::log(0.2) + 2 * std::log(0.3) + 4 * std::log(0.7);
  EXPECT_NEAR(log_likelihood(p, c), expected, 1e-12);
  EXPECT_NEAR(log_likelihood(p, c, InitialTerm::kStationary) - expected,
              std::log(0.6), 1e-12);
}

TEST(LogLikelihoodTest, HalfHalfChain) {
  const auto fam = two_state();
  const auto traj = make({0, 1, 1, 0, 0, 1, 0});
  EXPECT_NEAR(log_likelihood(fam, {0.5, 0.5}, traj), 6 * std::log(0.5), 1e-12);
}

TEST(LogLikelihoodTest, ImpossibleTransitionGivesMinusInfinity) {
  const auto fam = gate_family();
  EXPECT_EQ(log_likelihood(fam, {0.0}, make({0, 1})),
            -std::numeric_limits<double>::infinity());
  // Unobserved zero-probability cells contribute nothing.
  EXPECT_NEAR(log_likelihood(fam, {0.0}, make({0, 0, 0})), 0.0, 1e-15);
}

TEST(GridPosteriorTest, TwoPointBayesRule) {
  // One observed 0 -> 1 transition: likelihood p, so 0.4 vs 0.2 gives 2:1.
  const auto fam = two_state();
  const PriorSpec prior = uniform_prior({{0.4, 0.5}, {0.2, 0.5}});
  const auto post = grid_posterior(prior, fam, make({0, 1}));
  EXPECT_NEAR(post.normalized_weights[0], 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(post.normalized_weights[1], 1.0 / 3.0, 1e-12);
  EXPECT_EQ(post.n, 1u);
  const ParamPoint mean = posterior_mean(post, prior);
  EXPECT_NEAR(mean[0], 2.0 / 3.0 * 0.4 + 1.0 / 3.0 * 0.2, 1e-12);
  EXPECT_NEAR(mean[1], 0.5, 1e-12);
}

TEST(GridPosteriorTest, NoTransitionsReturnsPrior) {
  const auto fam = two_state();
  const PriorSpec prior({{0.2, 0.3}, {0.6, 0.1}, {0.5, 0.5}}, {0.2, 0.3, 0.5});
  const GridLikelihood model(fam, prior);
  const auto post = model.posterior(PairCounts(kTwo));
  for (std::size_t g = 0; g < 3; ++g) {
    EXPECT_NEAR(post.normalized_weights[g], prior.weights()[g], 1e-15);
  }
}

TEST(GridPosteriorTest, DegenerateWhenEveryPointExcludesData) {
  const auto fam = gate_family();
  const PriorSpec prior = uniform_prior({{0.0}});
  EXPECT_THROW(grid_posterior(prior, fam, make({0, 1})), DegeneratePosteriorError);
  EXPECT_THROW(posterior_from_log_weights(
                   {-std::numeric_limits<double>::infinity()}, 1),
               DegeneratePosteriorError);
}

TEST(GridPosteriorTest, ZeroLikelihoodPointsStayZero) {
  const auto fam = gate_family();
  const PriorSpec prior = uniform_prior({{0.0}, {0.5}});
  const auto post = grid_posterior(prior, fam, make({0, 1, 1, 0, 0}));
  EXPECT_EQ(post.normalized_weights[0], 0.0);
  EXPECT_EQ(post.normalized_weights[1], 1.0);
}

TEST(GridPosteriorTest, NormalizationIgnoresConstantShift) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> z(0.0, 50.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> lw(10);
    for (double& v : lw) v = z(rng);
    auto shifted = lw;
    for (double& v : shifted) v += 1234.5;
    const auto a = posterior_from_log_weights(lw, 0);
    const auto b = posterior_from_log_weights(shifted, 0);
    for (std::size_t g = 0; g < lw.size(); ++g) {
      EXPECT_NEAR(a.normalized_weights[g], b.normalized_weights[g], 1e-14);
    }
    EXPECT_NEAR(b.log_evidence - a.log_evidence, 1234.5, 1e-9);
  }
}

TEST(GridPosteriorTest, HugeCountsDoNotUnderflow) {
  const auto fam = two_state();
  const PriorSpec prior = uniform_prior({{0.2, 0.3}, {0.21, 0.3}});
  const GridLikelihood model(fam, prior);
  const PairCounts c(kTwo, {{8000000, 2000000}, {3000000, 7000000}}, 0);
  const auto post = model.posterior(c);
  EXPECT_TRUE(std::isfinite(post.log_evidence));
  EXPECT_NEAR(post.normalized_weights[0], 1.0, 1e-12);
}

TEST(GridPosteriorTest, SufficientStatisticsGiveIdenticalPosteriors) {
  const auto fam = two_state();
  const PriorSpec prior = uniform_prior(domain_grid(fam, {7, 7}));
  for (auto term : {InitialTerm::kAncillary, InitialTerm::kStationary}) {
    const auto a = grid_posterior(prior, fam, make({0, 1, 1, 0, 0}), term);
    const auto b = grid_posterior(prior, fam, make({0, 0, 1, 1, 0}), term);
    EXPECT_EQ(a.normalized_weights, b.normalized_weights);
  }
}

TEST(PosteriorMeanTest, InsideConvexHullOfSupport) {
  const auto fam = two_state();
  const PriorSpec prior = uniform_prior(domain_grid(fam, {9, 9}));
  std::mt19937_64 rng(12);
  for (std::uint64_t rep = 0; rep < 20; ++rep) {
    RngStream s(5, rep);
    const auto p = fam.transition_matrix({0.3, 0.6});
    const auto traj = sample_trajectory(p, invariant_measure(p), 50, s);
    const auto post = grid_posterior(prior, fam, traj);
    const ParamPoint mean = posterior_mean(post, prior);
    for (std::size_t c = 0; c < 2; ++c) {
      double lo = 1.0, hi = 0.0;
      for (std::size_t g = 0; g < prior.size(); ++g) {
        if (post.normalized_weights[g] > 0.0) {
          lo = std::min(lo, prior.grid()[g][c]);
          hi = std::max(hi, prior.grid()[g][c]);
        }
      }
      EXPECT_GE(mean[c], lo);
      EXPECT_LE(mean[c], hi);
    }
  }
}

TEST(PosteriorMeanTest, SymmetricPriorWithoutDataGivesCentroid) {
  const auto fam = build_family({"two_state", {}, {{{0.1, 0.9}, {0.1, 0.9}}}});
  const PriorSpec prior = uniform_prior(domain_grid(fam, {5, 5}));
  const ParamPoint m = prior.mean();
  EXPECT_NEAR(m[0], 0.5, 1e-12);
  EXPECT_NEAR(m[1], 0.5, 1e-12);
}

TEST(DomainGridTest, OpenAndClosedAxes) {
  const auto open = domain_grid(two_state(), {3, 1});
  ASSERT_EQ(open.size(), 3u);
  EXPECT_DOUBLE_EQ(open[0][0], 0.25);
  EXPECT_DOUBLE_EQ(open[2][0], 0.75);
  EXPECT_DOUBLE_EQ(open[1][1], 0.5);
  const auto fam = build_family({"two_state", {}, {{{0.05, 0.95}, {0.05, 0.95}}}});
  const auto closed = domain_grid(fam, {21, 21});
  ASSERT_EQ(closed.size(), 441u);
  EXPECT_EQ(closed.front()[0], 0.05);
  EXPECT_EQ(closed.back()[1], 0.95);
  // Last axis varies fastest.
  EXPECT_EQ(closed[1][0], 0.05);
  EXPECT_NEAR(closed[1][1], 0.095, 1e-15);
}

TEST(DirichletTest, PosteriorMeanFormula) {
  const PairCounts c(kTwo, {{3, 7}, {0, 0}});
  const auto m = dirichlet_posterior_mean(c, 1.0);
  EXPECT_NEAR(m(0, 0), 4.0 / 12.0, 1e-15);
  EXPECT_NEAR(m(0, 1), 8.0 / 12.0, 1e-15);
  EXPECT_NEAR(m(1, 0), 0.5, 1e-15);
  EXPECT_NEAR(m(1, 1), 0.5, 1e-15);
  EXPECT_THROW(dirichlet_posterior_mean(c, 0.0), ConfigError);
}

TEST(DirichletTest, PriorWeightsUniformForAlphaOne) {
  const auto fam = build_family({"full_matrix", 2, {}});
  const PriorSpec prior = dirichlet_prior(fam, domain_grid(fam, {4, 4}), 1.0);
  for (double w : prior.weights()) EXPECT_NEAR(w, 1.0 / 16.0, 1e-15);
  const PriorSpec peaked = dirichlet_prior(fam, domain_grid(fam, {4, 4}), 3.0);
  double sum = 0.0;
  for (double w : peaked.weights()) sum += w;
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(PriorSpecTest, Validation) {
  EXPECT_THROW(PriorSpec({{0.2, 0.3}, {0.2, 0.3}}, {0.5, 0.5}), ConfigError);
  EXPECT_THROW(PriorSpec({{0.2, 0.3}}, {0.9}), ConfigError);
  EXPECT_THROW(PriorSpec({{0.2, 0.3}, {0.2}}, {0.5, 0.5}), ConfigError);
  EXPECT_THROW(uniform_prior({{1.2, 0.3}}).check_domain(two_state()), ConfigError);
}

TEST(MartingaleGapTest, EqualHorizonsGiveZero) {
  const auto fam = two_state();
  const PriorSpec prior = uniform_prior(domain_grid(fam, {5, 5}));
  const auto gap = martingale_gap(fam, prior, 50, 50, 20, 4);
  for (std::size_t c = 0; c < 2; ++c) {
    EXPECT_EQ(gap.mean[c], 0.0);
    EXPECT_EQ(gap.std_error[c], 0.0);
  }
  EXPECT_EQ(gap.replications_used, 20u);
}

TEST(MartingaleGapTest, PointMassPriorGivesZero) {
  const auto fam = two_state();
  const PriorSpec prior({{0.2, 0.3}, {0.6, 0.5}}, {1.0, 0.0});
  const auto gap = martingale_gap(fam, prior, 10, 100, 20, 4);
  for (std::size_t c = 0; c < 2; ++c) EXPECT_EQ(gap.mean[c], 0.0);
}

TEST(MartingaleGapTest, IndependentOfThreadCount) {
  const auto fam = two_state();
  const PriorSpec prior = uniform_prior(domain_grid(fam, {5, 5}));
  const auto a = martingale_gap(fam, prior, 10, 100, 64, 9, 1);
  const auto b = martingale_gap(fam, prior, 10, 100, 64, 9, 4);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(MartingaleGapTest, ArgumentChecks) {
  const auto fam = two_state();
  const PriorSpec prior = uniform_prior(domain_grid(fam, {3, 3}));
  EXPECT_THROW(martingale_gap(fam, prior, 0, 10, 10, 1), ConfigError);
  EXPECT_THROW(martingale_gap(fam, prior, 20, 10, 10, 1), ConfigError);
  EXPECT_THROW(martingale_gap(fam, prior, 5, 10, 1, 1), ConfigError);
}

}  // namespace
}  // namespace mcbayes

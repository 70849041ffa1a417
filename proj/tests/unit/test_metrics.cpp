#include "mcbayes/errors.hpp"
#include "mcbayes/metrics.hpp"
#include "mcbayes/stationary.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

namespace mcbayes {
namespace {

SupportedMeasure delta(double x) { return SupportedMeasure({{x}}, {1.0}); }

// Random pair (mu, nu) on a shared pool of `k` points in dimension `dim`,
// each measure living on a random non-empty subset of the pool.
struct RandomPair {
  std::vector<Point> pool;
  std::vector<double> mu, nu;
};

std::vector<double> random_on_subset(std::size_t k, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> pick(1, (1u << k) - 1);
  const std::uint32_t mask = pick(rng);
  auto w = testing::random_weights(k, rng);
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (!(mask & (1u << i))) w[i] = 0.0;
    sum += w[i];
  }
  for (double& v : w) v /= sum;
  return w;
}

std::vector<Point> random_pool(std::size_t k, std::size_t dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0);
  std::vector<Point> pool(k, Point(dim));
  for (auto& p : pool) {
    for (double& c : p) c = u(rng);
  }
  return pool;
}

RandomPair random_pair(std::size_t k, std::size_t dim, std::mt19937_64& rng) {
  RandomPair r;
  r.pool = random_pool(k, dim, rng);
  r.mu = random_on_subset(k, rng);
  r.nu = random_on_subset(k, rng);
  return r;
}

TEST(SupportedMeasureTest, Validation) {
  EXPECT_THROW(SupportedMeasure({}, {}), ConfigError);
  EXPECT_THROW(SupportedMeasure({{0.0}, {0.0}}, {0.5, 0.5}), ConfigError);
  EXPECT_THROW(SupportedMeasure({{0.0}, {1.0}}, {0.5, 0.6}), ConfigError);
  EXPECT_THROW(SupportedMeasure({{0.0, 0.0, 0.0}}, {1.0}), ConfigError);
}

TEST(TvDistanceTest, Examples) {
  EXPECT_EQ(tv_distance(delta(0), delta(1)), 2.0);
  const SupportedMeasure a({{0.0}, {1.0}}, {0.5, 0.5});
  const SupportedMeasure b({{0.0}, {1.0}}, {0.4, 0.6});
  EXPECT_NEAR(tv_distance(a, b), 0.2, 1e-15);
  EXPECT_EQ(tv_distance(a, a), 0.0);
}

TEST(TvDistanceTest, MetricAxiomsOnRandomMeasures) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto pool = random_pool(5, 1, rng);
    const auto x = testing::on_support(pool, random_on_subset(5, rng));
    const auto y = testing::on_support(pool, random_on_subset(5, rng));
    const auto z = testing::on_support(pool, random_on_subset(5, rng));
    const double xy = tv_distance(x, y);
    EXPECT_GE(xy, 0.0);
    EXPECT_LE(xy, 2.0);
    EXPECT_NEAR(xy, tv_distance(y, x), 1e-15);
    EXPECT_LE(tv_distance(x, z), xy + tv_distance(y, z) + 1e-12);
  }
}

TEST(ProkhorovFeasibleTest, Examples) {
  EXPECT_FALSE(prokhorov_feasible(delta(0), delta(0.3), 0.2));
  EXPECT_TRUE(prokhorov_feasible(delta(0), delta(0.3), 0.31));
  EXPECT_TRUE(prokhorov_feasible(delta(0), delta(10), 1.0));
  EXPECT_THROW(prokhorov_feasible(delta(0), delta(1), 0.0), ConfigError);
}

TEST(ProkhorovExactTest, DiracPairs) {
  EXPECT_NEAR(prokhorov_exact(delta(0), delta(0.3)), 0.3, 1e-12);
  EXPECT_NEAR(prokhorov_exact(delta(0), delta(2.0)), 1.0, 1e-12);
  for (double d : {0.1, 0.5, 1.0, 2.0}) {
    EXPECT_NEAR(prokhorov_exact(delta(0), delta(d)), std::min(d, 1.0), 1e-12);
  }
}

TEST(ProkhorovExactTest, SmallFarAtom) {
  const SupportedMeasure mu({{0.0}, {5.0}}, {0.9, 0.1});
  EXPECT_NEAR(prokhorov_exact(mu, delta(0)), 0.1, 1e-12);
  EXPECT_EQ(prokhorov_exact(mu, mu), 0.0);
}

TEST(ProkhorovExactTest, RejectsLargeSupports) {
  std::vector<Point> pts;
  for (int i = 0; i < 21; ++i) pts.push_back({static_cast<double>(i)});
  const SupportedMeasure big(pts, std::vector<double>(21, 1.0 / 21));
  EXPECT_THROW(prokhorov_exact(big, delta(0)), ConfigError);
}

TEST(ProkhorovExactTest, MatchesBisectionOracle) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const auto r = random_pair(2 + trial % 4, 1 + trial % 2, rng);
    const double exact = prokhorov_exact(testing::on_support(r.pool, r.mu),
                                         testing::on_support(r.pool, r.nu));
    EXPECT_NEAR(exact, testing::oracle_prokhorov(r.pool, r.mu, r.nu), 1e-9);
  }
}

TEST(ProkhorovExactTest, MetricAxiomsAndTvDomination) {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pool = random_pool(6, 2, rng);
    const auto x = testing::on_support(pool, random_on_subset(6, rng));
    const auto y = testing::on_support(pool, random_on_subset(6, rng));
    const auto z = testing::on_support(pool, random_on_subset(6, rng));
    const double xy = prokhorov_exact(x, y);
    EXPECT_GE(xy, 0.0);
    EXPECT_LE(xy, 1.0);
    EXPECT_NEAR(xy, prokhorov_exact(y, x), 1e-12);
    EXPECT_LE(prokhorov_exact(x, z), xy + prokhorov_exact(y, z) + 1e-12);
    EXPECT_LE(xy, 0.5 * tv_distance(x, y) + 1e-12);
    if (tv_distance(x, y) > 1e-12) EXPECT_GT(xy, 0.0);
    EXPECT_EQ(prokhorov_exact(x, x), 0.0);
  }
}

TEST(ProkhorovExactTest, PairLawsOfTwoChains) {
  Matrix a(2, 2), b(2, 2);
  a << 0.8, 0.2, 0.3, 0.7;
  b << 0.7, 0.3, 0.2, 0.8;
  const auto fa = SupportedMeasure::from_pair_df(invariant_pair_df(TransitionMatrix(a)));
  const auto fb = SupportedMeasure::from_pair_df(invariant_pair_df(TransitionMatrix(b)));
  std::vector<Point> pool;
  std::vector<double> wa, wb;
  for (std::size_t i = 0; i < fa.size(); ++i) {
    pool.push_back(fa.points()[i]);
    wa.push_back(fa.weights()[i]);
    wb.push_back(fb.weights()[i]);
  }
  EXPECT_EQ(fb.points(), pool);
  EXPECT_NEAR(prokhorov_exact(fa, fb), testing::oracle_prokhorov(pool, wa, wb), 1e-9);
}

}  // namespace
}  // namespace mcbayes

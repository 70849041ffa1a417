#pragma once

// Shared helpers for the unit and acceptance tests. Everything here is
// computed independently of the library's numerics.

#include "mcbayes/chain_model.hpp"
#include "mcbayes/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace mcbayes::testing {

// Row-stochastic matrix with entries drawn from Exp(1), with roughly
// `zero_fraction` of off-diagonal entries zeroed. Rows always keep their
// diagonal entry so no row is empty.
inline Matrix random_stochastic(std::size_t k, std::mt19937_64& rng,
                                double zero_fraction = 0.0) {
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Matrix m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      double v = expo(rng);
      if (i != j && coin(rng) < zero_fraction) v = 0.0;
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      sum += v;
    }
    for (std::size_t j = 0; j < k; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) /= sum;
    }
  }
  return m;
}

// Strongly connected and aperiodic by construction: a cycle 0->1->..->0 plus
// positive diagonal, over random sparse extra mass.
inline Matrix random_ergodic(std::size_t k, std::mt19937_64& rng) {
  Matrix m = random_stochastic(k, rng, 0.6);
  for (std::size_t i = 0; i < k; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    m(r, static_cast<Eigen::Index>((i + 1) % k)) += 0.2;
    m(r, r) += 0.1;
    m.row(r) /= m.row(r).sum();
  }
  return m;
}

// mu P^t by repeated vector-matrix products.
inline std::vector<double> evolve(const Matrix& p, std::vector<double> mu, int t) {
  const std::size_t k = mu.size();
  for (int s = 0; s < t; ++s) {
    std::vector<double> next(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        next[j] += mu[i] * p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
    mu = std::move(next);
  }
  return mu;
}

// Random probability vector on `k` atoms with Exp(1) weights.
inline std::vector<double> random_weights(std::size_t k, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(k);
  double sum = 0.0;
  for (double& v : w) sum += (v = expo(rng));
  for (double& v : w) v /= sum;
  return w;
}

// Brute-force check of  nu(A) <= mu(A^alpha) + alpha  for every A, with the
// open alpha-neighbourhood computed from raw Euclidean distances.
inline bool oracle_feasible(const std::vector<Point>& pts,
                            const std::vector<double>& mu,
                            const std::vector<double>& nu, double alpha) {
  const std::size_t m = pts.size();
  auto dist = [&](std::size_t a, std::size_t b) {
    double s = 0.0;
    for (std::size_t c = 0; c < pts[a].size(); ++c) {
      const double d = pts[a][c] - pts[b][c];
      s += d * d;
    }
    return std::sqrt(s);
  };
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    double mu_a = 0.0, nu_a = 0.0, mu_nb = 0.0, nu_nb = 0.0;
    for (std::size_t x = 0; x < m; ++x) {
      if (mask & (1u << x)) {
        mu_a += mu[x];
        nu_a += nu[x];
      }
      bool near = false;
      for (std::size_t a = 0; a < m && !near; ++a) {
        if ((mask & (1u << a)) && dist(x, a) < alpha) near = true;
      }
      if (near) {
        mu_nb += mu[x];
        nu_nb += nu[x];
      }
    }
    if (nu_a > mu_nb + alpha + 1e-14) return false;
    if (mu_a > nu_nb + alpha + 1e-14) return false;
  }
  return true;
}

// Infimum of feasible alpha: scan alpha = i * 1e-4 for the first feasible
// value, then bisect the bracket to 1e-13.
inline double oracle_prokhorov(const std::vector<Point>& pts,
                               const std::vector<double>& mu,
                               const std::vector<double>& nu) {
  constexpr double kStep = 1e-4;
  double lo = 0.0, hi = kStep;
  for (int i = 1;; ++i) {
    hi = i * kStep;
    if (oracle_feasible(pts, mu, nu, hi)) break;
    lo = hi;
  }
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (oracle_feasible(pts, mu, nu, mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

// Restrict a measure on a shared point list to its support.
inline SupportedMeasure on_support(const std::vector<Point>& pts,
                                   const std::vector<double>& w) {
  std::vector<Point> p;
  std::vector<double> q;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (w[i] > 0.0) {
      p.push_back(pts[i]);
      q.push_back(w[i]);
    }
  }
  return SupportedMeasure(std::move(p), std::move(q));
}

}  // namespace mcbayes::testing

#include "mcbayes/metrics.hpp"

#include "mcbayes/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace mcbayes {

namespace {

double euclidean(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

/// Union of two supports with both weight vectors aligned to it, plus the
/// ranks of all pairwise distances among the sorted distinct distance levels.
struct MergedSupport {
  std::vector<Point> points;
  std::vector<double> mu;
  std::vector<double> nu;
  std::vector<double> levels;      // distinct distances, levels[0] == 0
  std::vector<std::uint8_t> rank;  // k x k, index into levels

  std::size_t size() const { return points.size(); }
};

MergedSupport merge(const SupportedMeasure& mu, const SupportedMeasure& nu) {
  if (mu.dimension() != nu.dimension()) {
    throw ConfigError("measures live in spaces of different dimension");
  }
  MergedSupport m;
  auto slot = [&m](const Point& p) {
    for (std::size_t i = 0; i < m.points.size(); ++i) {
      if (m.points[i] == p) return i;
    }
    m.points.push_back(p);
    m.mu.push_back(0.0);
    m.nu.push_back(0.0);
    return m.points.size() - 1;
  };
  for (std::size_t i = 0; i < mu.size(); ++i) {
    m.mu[slot(mu.points()[i])] += mu.weights()[i];
  }
  for (std::size_t i = 0; i < nu.size(); ++i) {
    m.nu[slot(nu.points()[i])] += nu.weights()[i];
  }
  return m;
}

void rank_distances(MergedSupport& m) {
  const std::size_t k = m.size();
  if (k > kProkhorovMaxSupport) {
    throw ConfigError("merged support of " + std::to_string(k) +
                      " points exceeds the exact Prokhorov limit of " +
                      std::to_string(kProkhorovMaxSupport));
  }
  std::vector<double> dist(k * k, 0.0);
  m.levels = {0.0};
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      dist[i * k + j] = dist[j * k + i] = euclidean(m.points[i], m.points[j]);
      m.levels.push_back(dist[i * k + j]);
    }
  }
  std::sort(m.levels.begin(), m.levels.end());
  m.levels.erase(std::unique(m.levels.begin(), m.levels.end()), m.levels.end());
  m.rank.resize(k * k);
  for (std::size_t i = 0; i < k * k; ++i) {
    m.rank[i] = static_cast<std::uint8_t>(
        std::lower_bound(m.levels.begin(), m.levels.end(), dist[i]) -
        m.levels.begin());
  }
}

/// Calls visit(mask, min_rank) for every non-empty subset, where min_rank[z]
/// is the rank of d(z, A). Masks are visited in increasing order so each
/// row derives from the subset without its lowest bit.
template <typename Visit>
void for_each_subset(const MergedSupport& m, Visit&& visit) {
  const std::size_t k = m.size();
  const std::size_t count = std::size_t{1} << k;
  std::vector<std::uint8_t> min_rank(count * k,
                                     std::numeric_limits<std::uint8_t>::max());
  for (std::size_t mask = 1; mask < count; ++mask) {
    const auto low = static_cast<std::size_t>(__builtin_ctzll(mask));
    const std::size_t rest = mask & (mask - 1);
    std::uint8_t* row = &min_rank[mask * k];
    const std::uint8_t* prev = &min_rank[rest * k];
    for (std::size_t z = 0; z < k; ++z) {
      row[z] = std::min(prev[z], m.rank[z * k + low]);
    }
    visit(mask, row);
  }
}

double mass(const std::vector<double>& w, std::size_t mask) {
  double s = 0.0;
  for (std::size_t z = 0; mask; ++z, mask >>= 1) {
    if (mask & 1U) s += w[z];
  }
  return s;
}

bool feasible_on(const MergedSupport& m, double alpha) {
  const std::size_t k = m.size();
  bool ok = true;
  for_each_subset(m, [&](std::size_t mask, const std::uint8_t* min_rank) {
    if (!ok) return;
    double mu_nbhd = 0.0;
    double nu_nbhd = 0.0;
    for (std::size_t z = 0; z < k; ++z) {
      if (m.levels[min_rank[z]] < alpha) {
        mu_nbhd += m.mu[z];
        nu_nbhd += m.nu[z];
      }
    }
    if (mass(m.nu, mask) > mu_nbhd + alpha ||
        mass(m.mu, mask) > nu_nbhd + alpha) {
      ok = false;
    }
  });
  return ok;
}

}  // namespace

SupportedMeasure::SupportedMeasure(std::vector<Point> points,
                                   std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.empty() || points_.size() != weights_.size()) {
    throw ConfigError("measure needs matching, non-empty points and weights");
  }
  const std::size_t d = points_.front().size();
  if (d != 1 && d != 2) {
    throw ConfigError("measure points must lie in R^1 or R^2");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].size() != d) {
      throw ConfigError("measure points have mixed dimensions");
    }
    for (double c : points_[i]) {
      if (!std::isfinite(c)) throw ConfigError("measure point is not finite");
    }
    if (!(weights_[i] >= 0.0)) {
      throw ConfigError("measure has a negative or NaN weight");
    }
    sum += weights_[i];
    for (std::size_t j = 0; j < i; ++j) {
      if (points_[j] == points_[i]) {
        throw ConfigError("measure points must be distinct");
      }
    }
  }
  if (std::abs(sum - 1.0) > kTolerance) {
    throw ConfigError("measure weights do not sum to 1");
  }
}

SupportedMeasure SupportedMeasure::from_dist(const Dist& dist) {
  std::vector<Point> points;
  std::vector<double> weights;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    points.push_back({dist.state_space().label(i)});
    weights.push_back(dist[i]);
  }
  return SupportedMeasure(std::move(points), std::move(weights));
}

SupportedMeasure SupportedMeasure::from_pair_df(const PairDF& df) {
  const Matrix cells = df.cell_masses();
  const auto& states = df.state_space();
  std::vector<Point> points;
  std::vector<double> weights;
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = 0; j < states.size(); ++j) {
      points.push_back({states.label(i), states.label(j)});
      weights.push_back(std::max(
          0.0, cells(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
    }
  }
  return SupportedMeasure(std::move(points), std::move(weights));
}

double tv_distance(const SupportedMeasure& mu, const SupportedMeasure& nu) {
  const MergedSupport m = merge(mu, nu);
  double s = 0.0;
  for (std::size_t z = 0; z < m.size(); ++z) s += std::abs(m.mu[z] - m.nu[z]);
  return std::min(s, 2.0);
}

bool prokhorov_feasible(const SupportedMeasure& mu, const SupportedMeasure& nu,
                        double alpha) {
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  MergedSupport m = merge(mu, nu);
  rank_distances(m);
  return feasible_on(m, alpha);
}

double prokhorov_exact(const SupportedMeasure& mu, const SupportedMeasure& nu) {
  MergedSupport m = merge(mu, nu);
  rank_distances(m);
  const std::size_t k = m.size();
  const std::size_t levels = m.levels.size();

  // gap[s]: required alpha on the interval (levels[s], levels[s+1]].
  std::vector<double> gap(levels, 0.0);
  std::vector<double> mu_by_rank(levels);
  std::vector<double> nu_by_rank(levels);
  for_each_subset(m, [&](std::size_t mask, const std::uint8_t* min_rank) {
    std::fill(mu_by_rank.begin(), mu_by_rank.end(), 0.0);
    std::fill(nu_by_rank.begin(), nu_by_rank.end(), 0.0);
    for (std::size_t z = 0; z < k; ++z) {
      mu_by_rank[min_rank[z]] += m.mu[z];
      nu_by_rank[min_rank[z]] += m.nu[z];
    }
    const double mu_a = mass(m.mu, mask);
    const double nu_a = mass(m.nu, mask);
    double mu_nbhd = 0.0;
    double nu_nbhd = 0.0;
    for (std::size_t s = 0; s < levels; ++s) {
      mu_nbhd += mu_by_rank[s];
      nu_nbhd += nu_by_rank[s];
      gap[s] = std::max({gap[s], nu_a - mu_nbhd, mu_a - nu_nbhd});
    }
  });

  double result = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < levels; ++s) {
    const double upper = s + 1 < levels
                             ? m.levels[s + 1]
                             : std::numeric_limits<double>::infinity();
    const double candidate = std::max(m.levels[s], gap[s]);
    if (candidate <= upper) {
      result = candidate;
      break;
    }
  }

  if (!feasible_on(m, result + 1e-12) ||
      (result > 1e-9 && feasible_on(m, result - 1e-9))) {
    throw std::logic_error("Prokhorov infimum failed its feasibility check");
  }
  return result;
}

}  // namespace mcbayes

#pragma once

#include "mcbayes/pair_df.hpp"
#include "mcbayes/stationary.hpp"

#include <cstddef>
#include <vector>

namespace mcbayes {

using Point = std::vector<double>;

/// Probability measure with finitely many atoms in R^d, d in {1, 2}.
class SupportedMeasure {
 public:
  static constexpr double kTolerance = 1e-10;

  SupportedMeasure(std::vector<Point> points, std::vector<double> weights);

  /// Atoms at the state labels of a distribution.
  static SupportedMeasure from_dist(const Dist& dist);
  /// Atoms at (label_i, label_j) with the cell masses of a pair d.f.
  static SupportedMeasure from_pair_df(const PairDF& df);

  std::size_t size() const { return points_.size(); }
  std::size_t dimension() const { return points_.front().size(); }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<Point> points_;
  std::vector<double> weights_;
};

/// 2 sup_A (mu(A) - nu(A)) = sum of |mu - nu| over the merged support.
double tv_distance(const SupportedMeasure& mu, const SupportedMeasure& nu);

/// Largest merged support handled by the exact Prokhorov routines; they
/// enumerate all 2^k subsets.
inline constexpr std::size_t kProkhorovMaxSupport = 20;

/// True iff nu(A) <= mu(A_alpha) + alpha and mu(A) <= nu(A_alpha) + alpha for
/// every subset A of the merged support, where A_alpha = {z : d(z, A) < alpha}
/// with Euclidean d. The empty set passes trivially.
bool prokhorov_feasible(const SupportedMeasure& mu, const SupportedMeasure& nu,
                        double alpha);

/// inf{alpha > 0 : prokhorov_feasible(mu, nu, alpha)}.
///
/// Between consecutive pairwise distances d_s < d_{s+1} every neighbourhood
/// A_alpha, alpha in (d_s, d_{s+1}], is the closed d_s-neighbourhood of A, so
/// the constraint there reduces to alpha >= g_s with
/// g_s = max_A max(nu(A) - mu(A^s), mu(A) - nu(A^s)). The result is the
/// smallest max(d_s, g_s) that still fits its interval. The value is checked
/// against prokhorov_feasible just above and just below it.
double prokhorov_exact(const SupportedMeasure& mu, const SupportedMeasure& nu);

}  // namespace mcbayes

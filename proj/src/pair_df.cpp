#include "mcbayes/pair_df.hpp"

#include "mcbayes/errors.hpp"

#include <algorithm>
#include <cmath>

namespace mcbayes {

PairDF::PairDF(Matrix grid, StateSpace states)
    : grid_(std::move(grid)), states_(std::move(states)) {
  const auto n = static_cast<Eigen::Index>(states_.size()) + 1;
  if (grid_.rows() != n || grid_.cols() != n) {
    throw ConfigError("pair d.f. grid shape does not match state space");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = grid_(i, j);
      if ((i == 0 || j == 0) && v != 0.0) {
        throw ConfigError("pair d.f. must vanish at -infinity");
      }
      if (!(v >= -kTolerance && v <= 1.0 + kTolerance)) {
        throw ConfigError("pair d.f. value outside [0,1]");
      }
      if (i > 0 && v < grid_(i - 1, j) - kTolerance) {
        throw ConfigError("pair d.f. is not monotone in its first argument");
      }
      if (j > 0 && v < grid_(i, j - 1) - kTolerance) {
        throw ConfigError("pair d.f. is not monotone in its second argument");
      }
    }
  }
  if (std::abs(grid_(n - 1, n - 1) - 1.0) > kTolerance) {
    throw ConfigError("pair d.f. does not reach 1 at the top corner");
  }
  grid_ = grid_.cwiseMax(0.0).cwiseMin(1.0);
  grid_(n - 1, n - 1) = 1.0;
}

PairDF PairDF::from_cell_masses(const Matrix& masses, const StateSpace& states) {
  const auto k = static_cast<Eigen::Index>(states.size());
  if (masses.rows() != k || masses.cols() != k) {
    throw ConfigError("cell-mass matrix shape does not match state space");
  }
  Matrix grid = Matrix::Zero(k + 1, k + 1);
  for (Eigen::Index i = 1; i <= k; ++i) {
    double row_cum = 0.0;
    for (Eigen::Index j = 1; j <= k; ++j) {
      row_cum += masses(i - 1, j - 1);
      grid(i, j) = grid(i - 1, j) + row_cum;
    }
  }
  return PairDF(std::move(grid), states);
}

double PairDF::operator()(double x, double x_prime) const {
  const auto i = static_cast<Eigen::Index>(states_.count_at_or_below(x));
  const auto j = static_cast<Eigen::Index>(states_.count_at_or_below(x_prime));
  return grid_(i, j);
}

Matrix PairDF::cell_masses() const {
  const auto k = static_cast<Eigen::Index>(states_.size());
  Matrix out(k, k);
  for (Eigen::Index i = 1; i <= k; ++i) {
    for (Eigen::Index j = 1; j <= k; ++j) {
      out(i - 1, j - 1) = grid_(i, j) - grid_(i - 1, j) - grid_(i, j - 1) +
                          grid_(i - 1, j - 1);
    }
  }
  return out;
}

}  // namespace mcbayes

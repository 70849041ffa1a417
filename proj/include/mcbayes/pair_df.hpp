#pragma once

#include "mcbayes/chain_model.hpp"

namespace mcbayes {

/// Two-argument distribution function F(x, x') of a measure on a finite
/// product space X x X, stored as its full cumulative grid.
///
/// The grid has (size+1) x (size+1) cells: index 0 along either axis is the
/// virtual "-infinity" row/column (all zeros) and index k > 0 holds
/// F(label(k-1), label(k'-1)). Construction checks that values lie in [0,1],
/// are non-decreasing in each argument and that the top corner is 1, all within
/// kTolerance; values are then clamped into [0,1]. Right-continuity and left
/// limits are automatic for step functions on a finite grid.
class PairDF {
 public:
  static constexpr double kTolerance = 1e-10;

  PairDF(Matrix grid, StateSpace states);

  /// Cumulates a non-negative cell-mass matrix that sums to 1.
  static PairDF from_cell_masses(const Matrix& masses, const StateSpace& states);

  const StateSpace& state_space() const { return states_; }
  std::size_t size() const { return states_.size(); }

  /// Full grid including the virtual zero row/column.
  const Matrix& grid() const { return grid_; }

  /// F(label(i), label(j)).
  double at(std::size_t i, std::size_t j) const {
    return grid_(static_cast<Eigen::Index>(i + 1),
                 static_cast<Eigen::Index>(j + 1));
  }

  /// F(x, x') for arbitrary reals.
  double operator()(double x, double x_prime) const;

  /// Recovers the per-cell masses by inclusion-exclusion.
  Matrix cell_masses() const;

 private:
  Matrix grid_;
  StateSpace states_;
};

}  // namespace mcbayes

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mcbayes {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Finite, strictly increasing set of real state labels (at least two).
class StateSpace {
 public:
  explicit StateSpace(std::vector<double> labels);

  /// Labels 0, 1, ..., size-1.
  static StateSpace integers(std::size_t size);

  std::size_t size() const { return labels_.size(); }
  double label(std::size_t i) const { return labels_[i]; }
  const std::vector<double>& labels() const { return labels_; }

  /// Number of labels <= x, i.e. one past the index of the largest state not
  /// exceeding x (0 when x lies below every state).
  std::size_t count_at_or_below(double x) const;

  bool operator==(const StateSpace&) const = default;

 private:
  std::vector<double> labels_;
};

/// A point theta of the parameter domain. Coordinates must be finite.
class ParamPoint {
 public:
  ParamPoint() = default;
  explicit ParamPoint(std::vector<double> coords);
  ParamPoint(std::initializer_list<double> coords)
      : ParamPoint(std::vector<double>(coords)) {}

  std::size_t dimension() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<double>& coords() const { return coords_; }

  bool operator==(const ParamPoint&) const = default;

 private:
  std::vector<double> coords_;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool open = false;  // (lo, hi) instead of [lo, hi]

  bool contains(double x) const {
    return open ? (x > lo && x < hi) : (x >= lo && x <= hi);
  }
};

/// Axis-aligned box in R^m.
class DomainBox {
 public:
  DomainBox() = default;
  explicit DomainBox(std::vector<Interval> axes);

  std::size_t dimension() const { return axes_.size(); }
  const Interval& axis(std::size_t i) const { return axes_[i]; }
  const std::vector<Interval>& axes() const { return axes_; }
  bool contains(const ParamPoint& theta) const;

 private:
  std::vector<Interval> axes_;
};

/// Row-stochastic matrix over a finite state space. Entries lie in [0,1] and
/// every row sums to 1 within 1e-12; construction throws otherwise.
class TransitionMatrix {
 public:
  static constexpr double kRowSumTolerance = 1e-12;

  TransitionMatrix(Matrix entries, StateSpace states);
  /// Integer-labelled state space of matching size.
  explicit TransitionMatrix(Matrix entries);

  std::size_t size() const { return states_.size(); }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Matrix& entries() const { return entries_; }
  const StateSpace& state_space() const { return states_; }

 private:
  Matrix entries_;
  StateSpace states_;
};

/// A parameterized family theta -> P^theta over a fixed state space.
class ChainFamily {
 public:
  using Builder = std::function<Matrix(std::span<const double>)>;

  ChainFamily(std::string name, DomainBox domain, StateSpace states,
              Builder builder);

  const std::string& name() const { return name_; }
  const DomainBox& domain() const { return domain_; }
  const StateSpace& state_space() const { return states_; }
  std::size_t dimension() const { return domain_.dimension(); }

  bool contains(const ParamPoint& theta) const;

  /// Throws ConfigError when theta is outside the domain or has the wrong
  /// dimension.
  TransitionMatrix transition_matrix(const ParamPoint& theta) const;

 private:
  std::string name_;
  DomainBox domain_;
  StateSpace states_;
  Builder builder_;
};

/// Config fragment selecting one of the built-in families.
///
///   two_state   theta = (p, q), p = P(0->1), q = P(1->0); validity (0,1)^2.
///   ring_walk   theta = (r) on `size` cyclic states; r steps right, 1-r left.
///   full_matrix theta lists the off-diagonal entries of each row in row-major
///               order (size*(size-1) coordinates); diagonal is the remainder.
///               Every entry must stay >= 1e-6.
///
/// `domain` defaults to the family's whole validity region.
struct FamilySpec {
  std::string family;
  std::optional<std::size_t> size;
  std::optional<std::vector<std::pair<double, double>>> domain;
};

inline constexpr double kFullMatrixMinEntry = 1e-6;

ChainFamily build_family(const FamilySpec& spec);

TransitionMatrix transition_matrix(const ChainFamily& family,
                                   const ParamPoint& theta);

/// Irreducible and aperiodic: the graph of strictly positive entries is
/// strongly connected and the gcd of its cycle lengths is 1.
bool is_ergodic_structure(const TransitionMatrix& p);

/// Transition law of Y_n = (X_n, X_{n+1}). Pair (i,j) has index i*size+j and
/// moves to (j,k) with probability p_jk. Labels of the returned state space are
/// the pair indices.
TransitionMatrix pair_transition(const TransitionMatrix& p);

/// max_ij |a_ij - b_ij|.
double max_entry_gap(const TransitionMatrix& a, const TransitionMatrix& b);

}  // namespace mcbayes

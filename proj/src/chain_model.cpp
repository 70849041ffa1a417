#include "mcbayes/chain_model.hpp"

#include "mcbayes/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

namespace mcbayes {

namespace {

std::string describe(const ParamPoint& theta) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < theta.dimension(); ++i) {
    if (i) os << ", ";
    os << theta[i];
  }
  os << ')';
  return os.str();
}

std::vector<std::size_t> bfs_levels(const Matrix& adj, bool transpose) {
  const auto n = static_cast<std::size_t>(adj.rows());
  std::vector<std::size_t> level(n, SIZE_MAX);
  std::queue<std::size_t> todo;
  level[0] = 0;
  todo.push(0);
  while (!todo.empty()) {
    const auto u = todo.front();
    todo.pop();
    for (std::size_t v = 0; v < n; ++v) {
      const double w = transpose ? adj(v, u) : adj(u, v);
      if (w > 0.0 && level[v] == SIZE_MAX) {
        level[v] = level[u] + 1;
        todo.push(v);
      }
    }
  }
  return level;
}

DomainBox resolve_domain(const FamilySpec& spec, std::size_t dim,
                         const Interval& validity) {
  if (!spec.domain) {
    return DomainBox(std::vector<Interval>(dim, validity));
  }
  const auto& bounds = *spec.domain;
  if (bounds.size() != dim) {
    throw ConfigError("family '" + spec.family + "' expects " +
                      std::to_string(dim) + " domain intervals, got " +
                      std::to_string(bounds.size()));
  }
  std::vector<Interval> axes;
  axes.reserve(dim);
  for (const auto& [lo, hi] : bounds) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
      throw ConfigError("malformed domain interval for family '" +
                        spec.family + "'");
    }
    if (!validity.contains(lo) || !validity.contains(hi)) {
      throw ConfigError("domain of family '" + spec.family +
                        "' leaves its validity region");
    }
    axes.push_back({lo, hi, false});
  }
  return DomainBox(std::move(axes));
}

ChainFamily make_two_state(const FamilySpec& spec) {
  if (spec.size && *spec.size != 2) {
    throw ConfigError("two_state family has exactly 2 states");
  }
  auto domain = resolve_domain(spec, 2, {0.0, 1.0, true});
  return ChainFamily("two_state", std::move(domain), StateSpace::integers(2),
                     [](std::span<const double> t) {
                       Matrix m(2, 2);
                       m << 1.0 - t[0], t[0], t[1], 1.0 - t[1];
                       return m;
                     });
}

ChainFamily make_ring_walk(const FamilySpec& spec) {
  if (!spec.size) throw ConfigError("ring_walk family requires 'size'");
  const std::size_t k = *spec.size;
  if (k < 3) throw ConfigError("ring_walk family needs at least 3 states");
  auto domain = resolve_domain(spec, 1, {0.0, 1.0, true});
  return ChainFamily("ring_walk", std::move(domain), StateSpace::integers(k),
                     [k](std::span<const double> t) {
                       const auto n = static_cast<Eigen::Index>(k);
                       Matrix m = Matrix::Zero(n, n);
                       for (Eigen::Index i = 0; i < n; ++i) {
                         m(i, (i + 1) % n) += t[0];
                         m(i, (i + n - 1) % n) += 1.0 - t[0];
                       }
                       return m;
                     });
}

ChainFamily make_full_matrix(const FamilySpec& spec) {
  if (!spec.size) throw ConfigError("full_matrix family requires 'size'");
  const std::size_t k = *spec.size;
  if (k < 2) throw ConfigError("full_matrix family needs at least 2 states");
  const std::size_t dim = k * (k - 1);
  const double row_budget = 1.0 - kFullMatrixMinEntry;
  const double per_entry_hi = row_budget / static_cast<double>(k - 1);
  auto domain =
      resolve_domain(spec, dim, {kFullMatrixMinEntry, per_entry_hi, false});
  if (spec.domain) {
    // The box must keep every diagonal entry >= kFullMatrixMinEntry.
    for (std::size_t row = 0; row < k; ++row) {
      double hi_sum = 0.0;
      for (std::size_t c = 0; c + 1 < k; ++c) {
        hi_sum += domain.axis(row * (k - 1) + c).hi;
      }
      if (hi_sum > row_budget + 1e-15) {
        throw ConfigError(
            "full_matrix domain allows a diagonal entry below 1e-6");
      }
    }
  }
  return ChainFamily("full_matrix", std::move(domain), StateSpace::integers(k),
                     [k](std::span<const double> t) {
                       const auto n = static_cast<Eigen::Index>(k);
                       Matrix m(n, n);
                       std::size_t next = 0;
                       for (Eigen::Index i = 0; i < n; ++i) {
                         double off = 0.0;
                         for (Eigen::Index j = 0; j < n; ++j) {
                           if (i == j) continue;
                           m(i, j) = t[next++];
                           off += m(i, j);
                         }
                         m(i, i) = 1.0 - off;
                       }
                       return m;
                     });
}

}  // namespace

StateSpace::StateSpace(std::vector<double> labels) : labels_(std::move(labels)) {
  if (labels_.size() < 2) {
    throw ConfigError("state space needs at least 2 states");
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!std::isfinite(labels_[i])) {
      throw ConfigError("state labels must be finite");
    }
    if (i > 0 && !(labels_[i] > labels_[i - 1])) {
      throw ConfigError("state labels must be strictly increasing");
    }
  }
}

StateSpace StateSpace::integers(std::size_t size) {
  std::vector<double> labels(size);
  std::iota(labels.begin(), labels.end(), 0.0);
  return StateSpace(std::move(labels));
}

std::size_t StateSpace::count_at_or_below(double x) const {
  return static_cast<std::size_t>(
      std::upper_bound(labels_.begin(), labels_.end(), x) - labels_.begin());
}

ParamPoint::ParamPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  for (double c : coords_) {
    if (!std::isfinite(c)) {
      throw ConfigError("parameter coordinates must be finite");
    }
  }
}

DomainBox::DomainBox(std::vector<Interval> axes) : axes_(std::move(axes)) {}

bool DomainBox::contains(const ParamPoint& theta) const {
  if (theta.dimension() != axes_.size()) return false;
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (!axes_[i].contains(theta[i])) return false;
  }
  return true;
}

TransitionMatrix::TransitionMatrix(Matrix entries, StateSpace states)
    : entries_(std::move(entries)), states_(std::move(states)) {
  const auto n = static_cast<Eigen::Index>(states_.size());
  if (entries_.rows() != n || entries_.cols() != n) {
    throw ConfigError("transition matrix shape does not match state space");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = entries_(i, j);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw ConfigError("transition probability outside [0,1] at row " +
                          std::to_string(i));
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw ConfigError("transition matrix row " + std::to_string(i) +
                        " does not sum to 1");
    }
  }
}

TransitionMatrix::TransitionMatrix(Matrix entries)
    : TransitionMatrix(entries, StateSpace::integers(
                                    static_cast<std::size_t>(entries.rows()))) {}

ChainFamily::ChainFamily(std::string name, DomainBox domain, StateSpace states,
                         Builder builder)
    : name_(std::move(name)),
      domain_(std::move(domain)),
      states_(std::move(states)),
      builder_(std::move(builder)) {
  if (domain_.dimension() == 0) {
    throw ConfigError("family '" + name_ + "' has an empty parameter domain");
  }
}

bool ChainFamily::contains(const ParamPoint& theta) const {
  return domain_.contains(theta);
}

TransitionMatrix ChainFamily::transition_matrix(const ParamPoint& theta) const {
  if (theta.dimension() != dimension()) {
    throw ConfigError("family '" + name_ + "' expects " +
                      std::to_string(dimension()) + " parameters, got " +
                      std::to_string(theta.dimension()));
  }
  if (!domain_.contains(theta)) {
    throw ConfigError("parameter " + describe(theta) +
                      " lies outside the domain of family '" + name_ + "'");
  }
  return TransitionMatrix(builder_(theta.coords()), states_);
}

ChainFamily build_family(const FamilySpec& spec) {
  if (spec.family == "two_state") return make_two_state(spec);
  if (spec.family == "ring_walk") return make_ring_walk(spec);
  if (spec.family == "full_matrix") return make_full_matrix(spec);
  throw ConfigError("unknown chain family '" + spec.family + "'");
}

TransitionMatrix transition_matrix(const ChainFamily& family,
                                   const ParamPoint& theta) {
  return family.transition_matrix(theta);
}

bool is_ergodic_structure(const TransitionMatrix& p) {
  const Matrix& adj = p.entries();
  const auto forward = bfs_levels(adj, false);
  const auto backward = bfs_levels(adj, true);
  for (std::size_t v = 0; v < p.size(); ++v) {
    if (forward[v] == SIZE_MAX || backward[v] == SIZE_MAX) return false;
  }
  // In a strongly connected graph the period is the gcd over all edges u->v
  // of level(u) + 1 - level(v), with levels from a BFS tree.
  std::size_t period = 0;
  for (std::size_t u = 0; u < p.size(); ++u) {
    for (std::size_t v = 0; v < p.size(); ++v) {
      if (p(u, v) > 0.0) {
        const auto diff = static_cast<long long>(forward[u]) + 1 -
                          static_cast<long long>(forward[v]);
        period = std::gcd(period, static_cast<std::size_t>(std::llabs(diff)));
      }
    }
  }
  return period == 1;
}

TransitionMatrix pair_transition(const TransitionMatrix& p) {
  const auto n = static_cast<Eigen::Index>(p.size());
  Matrix out = Matrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index k = 0; k < n; ++k) {
        out(i * n + j, j * n + k) = p.entries()(j, k);
      }
    }
  }
  return TransitionMatrix(std::move(out));
}

double max_entry_gap(const TransitionMatrix& a, const TransitionMatrix& b) {
  if (a.size() != b.size()) {
    throw ConfigError("transition matrices have different sizes");
  }
  return (a.entries() - b.entries()).cwiseAbs().maxCoeff();
}

}  // namespace mcbayes

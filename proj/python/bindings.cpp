#include "mcbayes/bayes.hpp"
#include "mcbayes/commands.hpp"
#include "mcbayes/config.hpp"
#include "mcbayes/errors.hpp"
#include "mcbayes/experiment.hpp"
#include "mcbayes/metrics.hpp"
#include "mcbayes/stationary.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace mcbayes;

namespace {

using PointList = std::vector<std::vector<double>>;

std::vector<ParamPoint> to_points(const PointList& rows) {
  std::vector<ParamPoint> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.emplace_back(r);
  return out;
}

PriorSpec to_prior(const PointList& grid, std::optional<std::vector<double>> weights) {
  auto points = to_points(grid);
  if (!weights) return uniform_prior(std::move(points));
  return PriorSpec(std::move(points), std::move(*weights));
}

Trajectory to_trajectory(std::vector<std::size_t> states) {
  Trajectory t;
  t.states = std::move(states);
  return t;
}

InitialTerm to_initial(const std::string& name) {
  if (name == "ancillary") return InitialTerm::kAncillary;
  if (name == "stationary") return InitialTerm::kStationary;
  throw ConfigError("initial must be 'ancillary' or 'stationary'");
}

Matrix counts_matrix(const PairCounts& c) {
  Matrix m(static_cast<Eigen::Index>(c.size()), static_cast<Eigen::Index>(c.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          static_cast<double>(c(i, j));
    }
  }
  return m;
}

PairCounts counts_from(const Matrix& m) {
  std::vector<std::vector<std::uint64_t>> rows(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      if (!(v >= 0.0) || v != std::floor(v)) {
        throw ConfigError("counts must be non-negative integers");
      }
      rows[static_cast<std::size_t>(i)].push_back(static_cast<std::uint64_t>(v));
    }
  }
  return PairCounts(StateSpace::integers(rows.size()), rows);
}

// Values F(x_i, x_j) at the state labels, without the -inf row and column.
Matrix df_values(const PairDF& f) {
  const auto k = static_cast<Eigen::Index>(f.size());
  return f.grid().bottomRightCorner(k, k);
}

SupportedMeasure to_measure(const PointList& points, std::vector<double> weights) {
  return SupportedMeasure(points, std::move(weights));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bayesian estimation for parameterized finite ergodic Markov chains";

  auto config_error = py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  auto degenerate =
      py::register_exception<DegenerateModelError>(m, "DegenerateModelError", PyExc_RuntimeError);
  py::register_exception<NonErgodicError>(m, "NonErgodicError", degenerate.ptr());
  py::register_exception<DegeneratePosteriorError>(m, "DegeneratePosteriorError",
                                                   degenerate.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  (void)config_error;

  py::class_<ChainFamily>(m, "ChainFamily")
      .def_property_readonly("name", &ChainFamily::name)
      .def_property_readonly("dimension", &ChainFamily::dimension)
      .def_property_readonly("size", [](const ChainFamily& f) { return f.state_space().size(); })
      .def_property_readonly("domain",
                             [](const ChainFamily& f) {
                               std::vector<std::tuple<double, double, bool>> out;
                               for (const auto& a : f.domain().axes()) {
                                 out.emplace_back(a.lo, a.hi, a.open);
                               }
                               return out;
                             })
      .def("contains",
           [](const ChainFamily& f, std::vector<double> theta) {
             return f.contains(ParamPoint(std::move(theta)));
           })
      .def("transition_matrix",
           [](const ChainFamily& f, std::vector<double> theta) {
             return f.transition_matrix(ParamPoint(std::move(theta))).entries();
           })
      .def("grid",
           [](const ChainFamily& f, std::vector<std::size_t> points_per_axis) {
             PointList out;
             for (const auto& p : domain_grid(f, points_per_axis)) out.push_back(p.coords());
             return out;
           },
           py::arg("points_per_axis"));

  m.def(
      "build_family",
      [](const std::string& name, std::optional<std::size_t> size,
         std::optional<std::vector<std::pair<double, double>>> domain) {
        return build_family({name, size, std::move(domain)});
      },
      py::arg("name"), py::arg("size") = py::none(), py::arg("domain") = py::none());

  m.def("is_ergodic", [](const Matrix& p) { return is_ergodic_structure(TransitionMatrix(p)); });
  m.def("invariant_measure",
        [](const Matrix& p) { return Vector(invariant_measure(TransitionMatrix(p)).weights()); });
  m.def("pair_invariant",
        [](const Matrix& p) { return Matrix(pair_invariant(TransitionMatrix(p)).weights()); });
  m.def("invariant_pair_df",
        [](const Matrix& p) { return df_values(invariant_pair_df(TransitionMatrix(p))); });
  m.def("stationary_residual", [](const Matrix& p, const Vector& pi) {
    return stationary_residual(TransitionMatrix(p), Dist(pi));
  });
  m.def(
      "tv_decay",
      [](const Matrix& p, const Vector& mu0, int t_max) {
        return tv_decay(TransitionMatrix(p), Dist(mu0), t_max);
      },
      py::arg("p"), py::arg("mu0"), py::arg("t_max"));

  m.def(
      "sample_trajectory",
      [](const Matrix& p, const Vector& mu0, std::size_t n, std::uint64_t master_seed,
         std::uint64_t replication) {
        RngStream stream(master_seed, replication);
        return sample_trajectory(TransitionMatrix(p), Dist(mu0), n, stream).states;
      },
      py::arg("p"), py::arg("mu0"), py::arg("n"), py::arg("master_seed"),
      py::arg("replication") = 0);

  m.def(
      "pair_counts",
      [](std::vector<std::size_t> states, std::size_t size) {
        return counts_matrix(pair_counts(to_trajectory(std::move(states)),
                                         StateSpace::integers(size)));
      },
      py::arg("states"), py::arg("size"));
  m.def("empirical_pair_df",
        [](const Matrix& counts) { return df_values(empirical_pair_df(counts_from(counts))); });
  m.def("sup_discrepancy", [](const Matrix& f, const Matrix& g) {
    if (f.rows() != g.rows() || f.cols() != g.cols()) {
      throw ConfigError("distribution functions have different shapes");
    }
    return (f - g).cwiseAbs().maxCoeff();
  });

  m.def(
      "tv_distance",
      [](const PointList& mu_points, std::vector<double> mu_weights, const PointList& nu_points,
         std::vector<double> nu_weights) {
        return tv_distance(to_measure(mu_points, std::move(mu_weights)),
                           to_measure(nu_points, std::move(nu_weights)));
      },
      py::arg("mu_points"), py::arg("mu_weights"), py::arg("nu_points"), py::arg("nu_weights"));
  m.def(
      "prokhorov_exact",
      [](const PointList& mu_points, std::vector<double> mu_weights, const PointList& nu_points,
         std::vector<double> nu_weights) {
        return prokhorov_exact(to_measure(mu_points, std::move(mu_weights)),
                               to_measure(nu_points, std::move(nu_weights)));
      },
      py::arg("mu_points"), py::arg("mu_weights"), py::arg("nu_points"), py::arg("nu_weights"));

  m.def(
      "grid_posterior",
      [](const ChainFamily& family, const PointList& grid,
         std::optional<std::vector<double>> weights, std::vector<std::size_t> states,
         const std::string& initial) {
        const PriorSpec prior = to_prior(grid, std::move(weights));
        const auto post =
            grid_posterior(prior, family, to_trajectory(std::move(states)), to_initial(initial));
        return py::make_tuple(post.normalized_weights, posterior_mean(post, prior).coords(),
                              post.log_evidence);
      },
      py::arg("family"), py::arg("grid"), py::arg("weights") = py::none(), py::arg("states"),
      py::arg("initial") = "ancillary",
      "Returns (posterior weights, posterior mean, log evidence).");
  m.def(
      "dirichlet_posterior_mean",
      [](const Matrix& counts, double alpha) {
        return Matrix(dirichlet_posterior_mean(counts_from(counts), alpha).entries());
      },
      py::arg("counts"), py::arg("alpha") = 1.0);
  m.def(
      "martingale_gap",
      [](const ChainFamily& family, const PointList& grid,
         std::optional<std::vector<double>> weights, std::size_t n1, std::size_t n2,
         std::size_t replications, std::uint64_t seed, unsigned threads) {
        const auto gap = martingale_gap(family, to_prior(grid, std::move(weights)), n1, n2,
                                        replications, seed, threads);
        return py::dict(py::arg("mean") = gap.mean, py::arg("std_error") = gap.std_error,
                        py::arg("replications_used") = gap.replications_used,
                        py::arg("replications_skipped") = gap.replications_skipped);
      },
      py::arg("family"), py::arg("grid"), py::arg("weights") = py::none(), py::arg("n1"),
      py::arg("n2"), py::arg("replications"), py::arg("seed"), py::arg("threads") = 1);
  m.def(
      "check_identifiability",
      [](const ChainFamily& family, const PointList& grid) {
        const auto r = check_identifiability(family, to_points(grid));
        std::vector<std::tuple<std::size_t, std::size_t, double, double>> violations;
        for (const auto& v : r.violations) {
          violations.emplace_back(v.first, v.second, v.matrix_gap, v.df_gap);
        }
        return py::dict(py::arg("grid_size") = r.grid_size,
                        py::arg("pairs_compared") = r.pairs_compared,
                        py::arg("min_matrix_gap") = r.min_matrix_gap,
                        py::arg("min_df_gap") = r.min_df_gap, py::arg("violations") = violations,
                        py::arg("non_ergodic_points") = r.non_ergodic_points,
                        py::arg("complete") = r.complete);
      },
      py::arg("family"), py::arg("grid"));

  m.def(
      "run",
      [](const std::string& command, const std::string& config_json, unsigned threads) {
        const auto cfg = parse_config(config_json);
        std::ostringstream out;
        {
          py::gil_scoped_release release;
          run_command(parse_command(command), cfg, out, {threads, false});
        }
        return out.str();
      },
      py::arg("command"), py::arg("config_json"), py::arg("threads") = 1,
      "Run a CLI subcommand on a JSON config string and return the CSV text.");
}

#include "mcbayes/csv_io.hpp"

#include "mcbayes/errors.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

namespace mcbayes {

namespace {

void write_indexed_header(std::ostream& os, const std::string& prefix,
                          std::size_t count) {
  for (std::size_t c = 0; c < count; ++c) os << ',' << prefix << c;
}

void write_values(std::ostream& os, const std::vector<double>& values) {
  for (double v : values) os << ',' << format_double(v);
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_consistency_csv(std::ostream& os,
                           const std::vector<ExperimentRecord>& records,
                           std::size_t dimension) {
  os << "replication,n";
  write_indexed_header(os, "theta_", dimension);
  write_indexed_header(os, "theta_hat_", dimension);
  write_indexed_header(os, "err_", dimension);
  os << ",sup_discrepancy,posterior_entropy,wall_ms\n";
  for (const auto& r : records) {
    os << r.replication << ',' << r.n;
    write_values(os, r.theta.coords());
    write_values(os, r.theta_hat);
    write_values(os, r.error);
    os << ',' << format_double(r.sup_discrepancy) << ','
       << format_double(r.posterior_entropy) << ',' << format_double(r.wall_ms)
       << '\n';
  }
}

void write_lln_csv(std::ostream& os, const std::vector<ExperimentRecord>& records,
                   std::size_t dimension) {
  os << "replication,n";
  write_indexed_header(os, "theta_", dimension);
  os << ",sup_discrepancy,wall_ms\n";
  for (const auto& r : records) {
    os << r.replication << ',' << r.n;
    write_values(os, r.theta.coords());
    os << ',' << format_double(r.sup_discrepancy) << ','
       << format_double(r.wall_ms) << '\n';
  }
}

void write_ergodicity_csv(std::ostream& os,
                          const std::vector<ErgodicityRow>& rows) {
  os << "t,tv\n";
  for (const auto& r : rows) os << r.t << ',' << format_double(r.tv) << '\n';
}

void write_identifiability_csv(std::ostream& os,
                               const IdentifiabilityReport& report) {
  os << "record,grid_size,pairs_compared,first,second,matrix_gap,df_gap,"
        "complete\n";
  os << "summary," << report.grid_size << ',' << report.pairs_compared << ",,,"
     << format_double(report.min_matrix_gap) << ','
     << format_double(report.min_df_gap) << ','
     << (report.complete ? "true" : "false") << '\n';
  for (const auto& v : report.violations) {
    os << "violation,,," << v.first << ',' << v.second << ','
       << format_double(v.matrix_gap) << ',' << format_double(v.df_gap)
       << ",\n";
  }
  for (const auto i : report.non_ergodic_points) {
    os << "non_ergodic,,," << i << ",,,,\n";
  }
}

void write_martingale_csv(std::ostream& os, const MartingaleGap& gap) {
  os << "coordinate,mean_gap,std_error,replications_used,replications_skipped\n";
  for (std::size_t c = 0; c < gap.mean.size(); ++c) {
    os << c << ',' << format_double(gap.mean[c]) << ','
       << format_double(gap.std_error[c]) << ',' << gap.replications_used << ','
       << gap.replications_skipped << '\n';
  }
}

void write_dist_csv(std::ostream& os, const Dist& dist) {
  os << "state,probability\n";
  for (std::size_t i = 0; i < dist.size(); ++i) {
    os << format_double(dist.state_space().label(i)) << ','
       << format_double(dist[i]) << '\n';
  }
}

void write_pair_df_csv(std::ostream& os, const PairDF& df) {
  const auto& states = df.state_space();
  os << 'x';
  for (double label : states.labels()) os << ',' << format_double(label);
  os << '\n';
  for (std::size_t i = 0; i < states.size(); ++i) {
    os << format_double(states.label(i));
    for (std::size_t j = 0; j < states.size(); ++j) {
      os << ',' << format_double(df.at(i, j));
    }
    os << '\n';
  }
}

void write_posterior_csv(std::ostream& os, const PosteriorState& post,
                         const PriorSpec& prior) {
  if (post.normalized_weights.size() != prior.size()) {
    throw ConfigError("posterior and prior have different grid sizes");
  }
  for (std::size_t c = 0; c < prior.dimension(); ++c) {
    os << (c ? "," : "") << "theta_" << c;
  }
  os << ",weight,log_weight\n";
  for (std::size_t g = 0; g < prior.size(); ++g) {
    for (std::size_t c = 0; c < prior.dimension(); ++c) {
      os << (c ? "," : "") << format_double(prior.grid()[g][c]);
    }
    os << ',' << format_double(post.normalized_weights[g]) << ','
       << format_double(post.log_weights[g]) << '\n';
  }
}

void write_trajectory(std::ostream& os, const Trajectory& traj) {
  os << "# mcbayes trajectory master_seed=" << traj.master_seed
     << " replication=" << traj.replication
     << " transitions=" << traj.transitions() << '\n';
  for (const auto s : traj.states) os << s << '\n';
}

Trajectory read_trajectory(std::istream& is) {
  Trajectory traj;
  std::string line;
  if (!std::getline(is, line) || line.rfind("# mcbayes trajectory", 0) != 0) {
    throw ConfigError("trajectory file lacks its header line");
  }
  std::istringstream header(line.substr(20));
  std::string field;
  std::optional<std::size_t> declared;
  while (header >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    try {
      if (key == "master_seed") traj.master_seed = std::stoull(value);
      if (key == "replication") traj.replication = std::stoull(value);
      if (key == "transitions") declared = std::stoull(value);
    } catch (const std::exception&) {
      throw ConfigError("malformed trajectory header field '" + field + "'");
    }
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::size_t value = 0;
    const auto res = std::from_chars(line.data(), line.data() + line.size(), value);
    if (res.ec != std::errc{} || res.ptr != line.data() + line.size()) {
      throw ConfigError("malformed trajectory line '" + line + "'");
    }
    traj.states.push_back(value);
  }
  if (declared && *declared != traj.transitions()) {
    throw ConfigError("trajectory length does not match its header");
  }
  return traj;
}

}  // namespace mcbayes

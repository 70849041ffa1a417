#pragma once

#include "mcbayes/bayes.hpp"
#include "mcbayes/experiment.hpp"
#include "mcbayes/pair_df.hpp"
#include "mcbayes/sampling.hpp"
#include "mcbayes/stationary.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace mcbayes {

/// 17 significant digits with a '.' decimal separator regardless of locale;
/// "nan", "inf", "-inf" for non-finite values.
std::string format_double(double x);

/// replication,n,theta_0..,theta_hat_0..,err_0..,sup_discrepancy,
/// posterior_entropy,wall_ms
void write_consistency_csv(std::ostream& os,
                           const std::vector<ExperimentRecord>& records,
                           std::size_t dimension);

/// replication,n,theta_0..,sup_discrepancy,wall_ms
void write_lln_csv(std::ostream& os, const std::vector<ExperimentRecord>& records,
                   std::size_t dimension);

/// t,tv
void write_ergodicity_csv(std::ostream& os, const std::vector<ErgodicityRow>& rows);

/// Summary row, then one `violation` row per offending pair and one
/// `non_ergodic` row per excluded point:
/// record,grid_size,pairs_compared,first,second,matrix_gap,df_gap,complete
void write_identifiability_csv(std::ostream& os,
                               const IdentifiabilityReport& report);

/// coordinate,mean_gap,std_error,replications_used,replications_skipped
void write_martingale_csv(std::ostream& os, const MartingaleGap& gap);

/// state,probability
void write_dist_csv(std::ostream& os, const Dist& dist);

/// Header "x,<label_0>,...,<label_k-1>", then one row per first-argument
/// label: "<label_i>,F(label_i,label_0),...". The -inf row/column is implicit.
void write_pair_df_csv(std::ostream& os, const PairDF& df);

/// theta_0..theta_{m-1},weight,log_weight
void write_posterior_csv(std::ostream& os, const PosteriorState& post,
                         const PriorSpec& prior);

/// "# mcbayes trajectory master_seed=<u64> replication=<u64> transitions=<n>"
/// followed by one state index per line.
void write_trajectory(std::ostream& os, const Trajectory& traj);
Trajectory read_trajectory(std::istream& is);

}  // namespace mcbayes

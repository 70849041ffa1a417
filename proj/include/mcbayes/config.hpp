#pragma once

#include "mcbayes/bayes.hpp"
#include "mcbayes/chain_model.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace mcbayes {

enum class ThetaMode { kSampledFromPrior, kFixed };

/// Grid resolution plus weight rule ("uniform" or "dirichlet").
struct PriorConfig {
  std::vector<std::size_t> points_per_axis;
  std::string weights = "uniform";
  double alpha = 1.0;
};

/// Experiment description. JSON keys match the field names; unknown keys are
/// rejected:
///
///   family              {"family": name, "size": k, "domain": [[lo, hi], ...]}
///   prior               {"points_per_axis": k | [k, ...],
///                        "weights": "uniform" | "dirichlet", "alpha": a}
///   n_schedule          strictly increasing observation counts, all >= 1
///   replications        >= 1
///   master_seed         unsigned 64-bit
///   theta_mode          "sampled-from-prior" | "fixed"
///   theta               list of parameter points (fixed mode, ergodicity)
///   output              CSV path
///   initial             "stationary" | "uniform" | "delta:<index>"
///   likelihood_initial  "ancillary" | "stationary"
///   t_max               horizon of the ergodicity diagnostic
struct ExperimentConfig {
  FamilySpec family;
  std::optional<PriorConfig> prior;
  std::vector<std::size_t> n_schedule;
  std::size_t replications = 1;
  std::uint64_t master_seed = 0;
  ThetaMode theta_mode = ThetaMode::kSampledFromPrior;
  std::vector<ParamPoint> theta;
  std::string output;
  std::optional<std::string> initial;
  InitialTerm likelihood_initial = InitialTerm::kAncillary;
  int t_max = 50;

  /// Structural checks shared by every command.
  void validate() const;
};

FamilySpec parse_family_spec(const nlohmann::json& j);
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Grid and weights described by `cfg`, checked against the family domain.
PriorSpec build_prior(const ChainFamily& family, const PriorConfig& cfg);

/// Resolves an `initial` string against a transition matrix.
Dist initial_distribution(const std::string& spec, const TransitionMatrix& p);

}  // namespace mcbayes

#include "mcbayes/config.hpp"

#include "mcbayes/errors.hpp"
#include "mcbayes/stationary.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace mcbayes {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("unknown field '" + key + "' in " + where);
    }
  }
}

template <typename T>
T get_as(const json& j, const std::string& what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("field '" + what + "' has the wrong type");
  }
}

std::size_t get_count(const json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ConfigError("field '" + what + "' must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

ParamPoint parse_point(const json& j) {
  if (!j.is_array()) throw ConfigError("parameter point must be an array");
  return ParamPoint(get_as<std::vector<double>>(j, "theta"));
}

PriorConfig parse_prior(const json& j) {
  reject_unknown(j, {"points_per_axis", "weights", "alpha"}, "prior");
  PriorConfig out;
  if (!j.contains("points_per_axis")) {
    throw ConfigError("prior requires 'points_per_axis'");
  }
  const json& ppa = j.at("points_per_axis");
  if (ppa.is_array()) {
    for (const auto& v : ppa) {
      out.points_per_axis.push_back(get_count(v, "points_per_axis"));
    }
  } else {
    out.points_per_axis.push_back(get_count(ppa, "points_per_axis"));
  }
  if (j.contains("weights")) {
    out.weights = get_as<std::string>(j.at("weights"), "weights");
    if (out.weights != "uniform" && out.weights != "dirichlet") {
      throw ConfigError("prior weights must be 'uniform' or 'dirichlet'");
    }
  }
  if (j.contains("alpha")) out.alpha = get_as<double>(j.at("alpha"), "alpha");
  if (!(out.alpha > 0.0)) throw ConfigError("prior alpha must be positive");
  return out;
}

}  // namespace

FamilySpec parse_family_spec(const json& j) {
  reject_unknown(j, {"family", "size", "domain"}, "family");
  FamilySpec spec;
  if (!j.contains("family")) throw ConfigError("family requires 'family'");
  spec.family = get_as<std::string>(j.at("family"), "family");
  if (j.contains("size")) spec.size = get_count(j.at("size"), "size");
  if (j.contains("domain")) {
    spec.domain = get_as<std::vector<std::pair<double, double>>>(j.at("domain"),
                                                                "domain");
  }
  return spec;
}

void ExperimentConfig::validate() const {
  for (std::size_t i = 0; i < n_schedule.size(); ++i) {
    if (n_schedule[i] < 1) throw ConfigError("n_schedule entries must be >= 1");
    if (i > 0 && n_schedule[i] <= n_schedule[i - 1]) {
      throw ConfigError("n_schedule must be strictly increasing");
    }
  }
  if (replications < 1) throw ConfigError("replications must be >= 1");
  if (theta_mode == ThetaMode::kFixed && theta.empty()) {
    throw ConfigError("theta_mode 'fixed' needs a non-empty 'theta' list");
  }
  if (t_max < 0) throw ConfigError("t_max must be non-negative");
}

ExperimentConfig parse_config(const json& j) {
  reject_unknown(j,
                 {"family", "prior", "n_schedule", "replications",
                  "master_seed", "theta_mode", "theta", "output", "initial",
                  "likelihood_initial", "t_max"},
                 "config");
  ExperimentConfig cfg;
  if (!j.contains("family")) throw ConfigError("config requires 'family'");
  cfg.family = parse_family_spec(j.at("family"));
  if (j.contains("prior")) cfg.prior = parse_prior(j.at("prior"));
  if (j.contains("n_schedule")) {
    if (!j.at("n_schedule").is_array()) {
      throw ConfigError("n_schedule must be an array");
    }
    for (const auto& v : j.at("n_schedule")) {
      cfg.n_schedule.push_back(get_count(v, "n_schedule"));
    }
  }
  if (j.contains("replications")) {
    cfg.replications = get_count(j.at("replications"), "replications");
  }
  if (j.contains("master_seed")) {
    const json& s = j.at("master_seed");
    if (!s.is_number_unsigned()) {
      throw ConfigError("master_seed must be an unsigned 64-bit integer");
    }
    cfg.master_seed = s.get<std::uint64_t>();
  }
  if (j.contains("theta_mode")) {
    const auto mode = get_as<std::string>(j.at("theta_mode"), "theta_mode");
    if (mode == "sampled-from-prior") {
      cfg.theta_mode = ThetaMode::kSampledFromPrior;
    } else if (mode == "fixed") {
      cfg.theta_mode = ThetaMode::kFixed;
    } else {
      throw ConfigError("theta_mode must be 'sampled-from-prior' or 'fixed'");
    }
  }
  if (j.contains("theta")) {
    const json& t = j.at("theta");
    if (!t.is_array()) throw ConfigError("theta must be a list of points");
    for (const auto& p : t) cfg.theta.push_back(parse_point(p));
  }
  if (j.contains("output")) cfg.output = get_as<std::string>(j.at("output"), "output");
  if (j.contains("initial")) {
    cfg.initial = get_as<std::string>(j.at("initial"), "initial");
  }
  if (j.contains("likelihood_initial")) {
    const auto v = get_as<std::string>(j.at("likelihood_initial"),
                                       "likelihood_initial");
    if (v == "ancillary") {
      cfg.likelihood_initial = InitialTerm::kAncillary;
    } else if (v == "stationary") {
      cfg.likelihood_initial = InitialTerm::kStationary;
    } else {
      throw ConfigError("likelihood_initial must be 'ancillary' or 'stationary'");
    }
  }
  if (j.contains("t_max")) cfg.t_max = get_as<int>(j.at("t_max"), "t_max");
  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

PriorSpec build_prior(const ChainFamily& family, const PriorConfig& cfg) {
  std::vector<std::size_t> ppa = cfg.points_per_axis;
  if (ppa.size() == 1 && family.dimension() > 1) {
    ppa.assign(family.dimension(), ppa.front());
  }
  auto grid = domain_grid(family, ppa);
  PriorSpec prior = cfg.weights == "dirichlet"
                        ? dirichlet_prior(family, std::move(grid), cfg.alpha)
                        : uniform_prior(std::move(grid));
  prior.check_domain(family);
  return prior;
}

Dist initial_distribution(const std::string& spec, const TransitionMatrix& p) {
  if (spec == "stationary") return invariant_measure(p);
  if (spec == "uniform") return Dist::uniform(p.state_space());
  if (spec.rfind("delta:", 0) == 0) {
    std::size_t index = 0;
    try {
      std::size_t used = 0;
      index = std::stoul(spec.substr(6), &used);
      if (used != spec.size() - 6) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError("malformed initial distribution '" + spec + "'");
    }
    return Dist::delta(p.state_space(), index);
  }
  throw ConfigError("initial must be 'stationary', 'uniform' or 'delta:<i>'");
}

}  // namespace mcbayes

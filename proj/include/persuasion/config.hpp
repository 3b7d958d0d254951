#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "persuasion/approx.hpp"
#include "persuasion/exact.hpp"
#include "persuasion/harness.hpp"
#include "persuasion/model.hpp"
#include "persuasion/regions.hpp"

namespace persuasion {

using nlohmann::json;

// Region keys travel as bitstrings, most significant action first:
// "011" means action 0 rejected, actions 1 and 2 accepted.
inline std::string key_to_string(const RegionKey& key) {
  std::string s;
  s.reserve(key.outcomes.size());
  for (char c : key.outcomes) s.push_back(c ? '1' : '0');
  return s;
}

inline RegionKey key_from_string(const std::string& s) {
  RegionKey key;
  key.outcomes.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("region key must be a 0/1 bitstring");
    key.outcomes.push_back(c == '1' ? 1 : 0);
  }
  return key;
}

inline Instance parse_instance(const json& j) {
  if (!j.contains("x0") || !j.contains("actions"))
    throw std::invalid_argument("instance needs x0 and actions");
  std::vector<double> x0 = j.at("x0").get<std::vector<double>>();
  if (j.contains("dim") && j.at("dim").get<std::size_t>() != x0.size())
    throw std::invalid_argument("dim does not match x0 length");
  std::vector<Action> actions;
  int id = 0;
  for (const json& ja : j.at("actions")) {
    Action a;
    a.id = id++;
    a.label = ja.value("label", "a" + std::to_string(a.id));
    a.delta_x = ja.at("delta_x").get<std::vector<double>>();
    a.cost = ja.value("cost", 0.0);
    a.dm_utility = ja.value("dm_utility", 0.0);
    actions.push_back(std::move(a));
  }
  return Instance(std::move(x0), std::move(actions));
}

inline DiscretePrior parse_discrete_prior(const json& j) {
  DiscretePrior prior;
  prior.support = j.at("support").get<std::vector<std::vector<double>>>();
  prior.probs = j.at("probs").get<std::vector<double>>();
  if (prior.support.size() != prior.probs.size() || prior.support.empty())
    throw std::invalid_argument("prior support/probs length mismatch");
  double sum = 0.0;
  for (double p : prior.probs) {
    if (p < 0.0) throw std::invalid_argument("prior probs must be >= 0");
    sum += p;
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("prior probs must sum to 1");
  return prior;
}

inline GaussianPrior parse_gaussian_prior(const json& j) {
  GaussianPrior prior;
  prior.mean = j.at("mean").get<std::vector<double>>();
  if (j.contains("std")) {
    prior.std_dev = j.at("std").get<std::vector<double>>();
  } else if (j.contains("sigma2")) {
    prior.std_dev.assign(prior.mean.size(),
                         std::sqrt(j.at("sigma2").get<double>()));
  } else {
    throw std::invalid_argument("gaussian prior needs std or sigma2");
  }
  if (prior.std_dev.size() != prior.mean.size())
    throw std::invalid_argument("prior mean/std length mismatch");
  for (double s : prior.std_dev)
    if (s < 0.0) throw std::invalid_argument("prior std must be >= 0");
  return prior;
}

// Resolves the config's prior to a discrete one the exact solver accepts:
// discrete priors pass through, Gaussian priors get Monte Carlo
// discretization with the config's mc_samples and seed.
inline DiscretePrior resolve_prior(const json& config, std::size_t theta_dim) {
  const json& jp = config.at("prior");
  const std::string type = jp.at("type").get<std::string>();
  DiscretePrior prior;
  if (type == "discrete") {
    prior = parse_discrete_prior(jp);
  } else if (type == "gaussian") {
    const GaussianPrior gauss = parse_gaussian_prior(jp);
    prior = mc_discretize(gauss, config.value("mc_samples", 2000),
                          config.value("seed", std::uint64_t{0}));
  } else {
    throw std::invalid_argument("prior type must be discrete or gaussian");
  }
  for (const std::vector<double>& theta : prior.support)
    if (theta.size() != theta_dim)
      throw std::invalid_argument("prior theta length must be dim+1");
  return prior;
}

inline json policy_to_json(const SignalingPolicy& policy) {
  json j = json::object();
  for (std::size_t r = 0; r < policy.regions.size(); ++r) {
    std::vector<double> row;
    row.reserve(policy.probs[r].size());
    for (std::size_t a = 0; a < policy.probs[r].size(); ++a)
      row.push_back(policy.prob(r, a));
    j[key_to_string(policy.regions[r])] = row;
  }
  return j;
}

inline SignalingPolicy policy_from_json(const json& j) {
  SignalingPolicy policy;
  for (const auto& [key, row] : j.items()) {
    policy.regions.push_back(key_from_string(key));
    policy.probs.push_back(row.get<std::vector<double>>());
  }
  return policy;
}

inline json report_to_json(const SolveReport& report) {
  json j;
  j["dm_value"] = report.dm_value;
  j["bic_slack"] = report.bic_slack;
  j["region_masses"] = report.region_masses;
  j["policy"] = policy_to_json(report.policy);
  return j;
}

inline json report_to_json(const ApproxReport& report) {
  json j;
  j["lp_value"] = report.lp_value;
  j["epsilon"] = report.epsilon;
  j["delta"] = report.delta;
  j["K"] = report.K;
  j["seed"] = report.seed;
  j["recommendation_dist"] = report.recommendation_dist;
  j["policy"] = policy_to_json(report.policy);
  json masses = json::object();
  for (const Region& r : report.sampled_regions)
    masses[key_to_string(r.key)] = r.mass;
  j["sampled_region_masses"] = masses;
  return j;
}

inline SweepConfig parse_sweep_config(const json& j) {
  SweepConfig cfg;
  const Instance inst = parse_instance(j.at("instance"));
  cfg.base_x0 = inst.x0();
  cfg.base_actions = inst.actions();
  if (j.contains("prior")) {
    const GaussianPrior gauss = parse_gaussian_prior(j.at("prior"));
    cfg.theta_mean = gauss.mean;
  } else {
    cfg.theta_mean = j.at("theta_mean").get<std::vector<double>>();
  }
  if (cfg.theta_mean.size() != inst.theta_dim())
    throw std::invalid_argument("theta_mean length must be dim+1");
  cfg.sigma2_list = j.at("sigma2_list").get<std::vector<double>>();
  cfg.cost_grid = j.at("cost_grid").get<std::vector<double>>();
  cfg.delta_grid = j.at("delta_grid").get<std::vector<double>>();
  cfg.mc_samples = j.value("mc_samples", 2000);
  cfg.seed = j.value("seed", std::uint64_t{0});
  cfg.methods = j.value("methods", std::vector<std::string>{"signal", "full",
                                                            "none"});
  cfg.approx_epsilon = j.value("epsilon", 0.2);
  cfg.approx_delta = j.value("delta", 0.1);
  if (j.contains("roster"))
    cfg.roster = j.at("roster").get<std::vector<std::vector<double>>>();
  return cfg;
}

}  // namespace persuasion

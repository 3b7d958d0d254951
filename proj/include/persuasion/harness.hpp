#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "persuasion/approx.hpp"
#include "persuasion/costs.hpp"
#include "persuasion/exact.hpp"
#include "persuasion/model.hpp"
#include "persuasion/regions.hpp"

namespace persuasion {

namespace detail {

// Uniform double in (0,1], built from the top 53 bits of the generator so
// draws do not depend on library distribution internals.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

// Standard normal via Box-Muller (cosine branch).
inline double normal_draw(std::mt19937_64& rng) {
  const double u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  constexpr double two_pi = 6.283185307179586477;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

}  // namespace detail

// Sampler drawing θ coordinatewise from the Gaussian prior.
inline ThetaSampler gaussian_sampler(const GaussianPrior& prior) {
  if (prior.mean.size() != prior.std_dev.size())
    throw std::invalid_argument("prior mean/std length mismatch");
  return [prior](std::mt19937_64& rng) {
    std::vector<double> theta(prior.mean.size());
    for (std::size_t j = 0; j < theta.size(); ++j)
      theta[j] = prior.mean[j] + prior.std_dev[j] * detail::normal_draw(rng);
    return theta;
  };
}

// Replaces a continuous prior by n equally weighted i.i.d. draws, so the
// exact solver can run on it. Deterministic given the seed.
inline DiscretePrior mc_discretize(const GaussianPrior& prior, int n,
                                   std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("need at least one sample");
  const ThetaSampler sampler = gaussian_sampler(prior);
  std::mt19937_64 rng(seed);
  DiscretePrior out;
  out.support.reserve(static_cast<std::size_t>(n));
  out.probs.assign(static_cast<std::size_t>(n), 1.0 / n);
  for (int i = 0; i < n; ++i) out.support.push_back(sampler(rng));
  return out;
}

// Rescales decision-maker utilities into [0,1] by dividing by the largest
// one. All utilities must be nonnegative; an all-zero roster is returned
// unchanged.
inline Instance normalize_dm_utilities(const Instance& inst) {
  double max_u = 0.0;
  for (const Action& a : inst.actions()) {
    if (a.dm_utility < 0.0)
      throw std::invalid_argument("cannot normalize negative dm_utility");
    max_u = std::max(max_u, a.dm_utility);
  }
  if (max_u == 0.0) return inst;
  std::vector<Action> actions = inst.actions();
  for (Action& a : actions) a.dm_utility /= max_u;
  return Instance(inst.x0(), std::move(actions));
}

// The credit-scoring fixture: four features, one improvement action per
// feature with the direction that helps under the fitted rule, and the
// fitted rule itself (four coefficients plus bias) to center priors on.
struct HelocFixture {
  Instance instance;
  std::vector<double> theta_true;
};

inline HelocFixture heloc_fixture() {
  const std::vector<double> theta_true = {-0.22974527, 0.15633134, 0.52023116,
                                          -0.61600619, -0.08242841};
  const double signs[4] = {-1.0, 1.0, 1.0, -1.0};
  const char* labels[4] = {"x1_down", "x2_up", "x3_up", "x4_down"};
  std::vector<Action> actions(5);
  actions[0].id = 0;
  actions[0].label = "a0";
  actions[0].delta_x.assign(4, 0.0);
  for (int i = 0; i < 4; ++i) {
    Action& a = actions[static_cast<std::size_t>(i) + 1];
    a.id = i + 1;
    a.label = labels[i];
    a.delta_x.assign(4, 0.0);
    a.delta_x[static_cast<std::size_t>(i)] = signs[i];
    a.dm_utility = 1.0;
  }
  return {Instance(std::vector<double>(4, 0.0), std::move(actions)),
          theta_true};
}

// The four pairwise-difficulty count tables and the cost vectors previously
// fitted from them, kept for regression testing.
struct CostTablesFixture {
  std::vector<PairwiseComparisons> tables;
  std::vector<std::vector<double>> expected;
};

inline CostTablesFixture cost_tables_fixture() {
  // Each entry: {i, j, wins_i, wins_j} for the six unordered feature pairs.
  static const int pair_idx[6][2] = {{0, 1}, {0, 2}, {0, 3},
                                     {1, 2}, {1, 3}, {2, 3}};
  static const long long counts[4][6][2] = {
      {{8, 2}, {9, 1}, {7, 3}, {2, 8}, {0, 10}, {1, 9}},
      {{2, 8}, {3, 7}, {4, 6}, {6, 4}, {7, 3}, {6, 4}},
      {{2, 8}, {1, 9}, {4, 6}, {3, 7}, {7, 3}, {7, 3}},
      {{8, 2}, {9, 1}, {2, 3}, {7, 8}, {0, 10}, {1, 9}},
  };
  CostTablesFixture fx;
  for (int t = 0; t < 4; ++t) {
    PairwiseComparisons comp;
    comp.n = 4;
    comp.wins.assign(4, std::vector<long long>(4, 0));
    for (int k = 0; k < 6; ++k) {
      const int i = pair_idx[k][0];
      const int j = pair_idx[k][1];
      comp.wins[i][j] = counts[t][k][0];
      comp.wins[j][i] = counts[t][k][1];
    }
    fx.tables.push_back(std::move(comp));
  }
  fx.expected = {
      {0.5151, 0.0282, 0.0723, 0.3844},
      {0.1159, 0.428, 0.2758, 0.1803},
      {0.07640764, 0.27692769, 0.50635064, 0.14031403},
      {0.2987, 0.0428, 0.0476, 0.6109},
  };
  return fx;
}

// One experiment sweep: every (cost, delta) grid cell under every prior
// variance, with the requested solution methods. The cost and delta scalars
// apply to every non-null action; delta scales the action's direction
// vector.
struct SweepConfig {
  std::vector<double> base_x0;
  std::vector<Action> base_actions;       // deltas hold unit directions
  std::vector<double> theta_mean;          // prior center, also θ_true
  std::vector<double> sigma2_list;
  std::vector<double> cost_grid;
  std::vector<double> delta_grid;
  int mc_samples = 2000;
  std::uint64_t seed = 0;
  std::vector<std::string> methods;        // of {signal, full, none, approx}
  double approx_epsilon = 0.2;
  double approx_delta = 0.1;
  std::vector<std::vector<double>> roster;  // optional extra subjects (x0s)
};

struct SweepRow {
  double sigma2 = 0.0;
  double action_cost = 0.0;
  double action_delta = 0.0;
  std::string method;
  double dm_value = 0.0;
  double bic_slack = 0.0;
  double runtime_ms = 0.0;
  std::uint64_t seed = 0;
  std::string status;
};

namespace detail {

inline Instance sweep_cell_instance(const SweepConfig& cfg,
                                    const std::vector<double>& x0, double cost,
                                    double delta) {
  std::vector<Action> actions = cfg.base_actions;
  for (std::size_t i = 1; i < actions.size(); ++i) {
    for (double& v : actions[i].delta_x) v *= delta;
    actions[i].cost = cost;
  }
  return Instance(x0, std::move(actions));
}

// Point-mass-per-region policy helper.
inline SignalingPolicy constant_policy(const Instance& inst,
                                       const std::vector<Region>& regions,
                                       const std::vector<int>& choice) {
  SignalingPolicy policy;
  for (std::size_t r = 0; r < regions.size(); ++r) {
    policy.regions.push_back(regions[r].key);
    std::vector<double> row(inst.num_actions(), 0.0);
    row[static_cast<std::size_t>(choice[r])] = 1.0;
    policy.probs.push_back(std::move(row));
  }
  return policy;
}

struct MethodResult {
  double dm_value = 0.0;
  double bic_slack = 0.0;
};

inline MethodResult run_method(const std::string& method, const Instance& inst,
                               const DiscretePrior& prior,
                               const GaussianPrior& gauss,
                               const std::vector<double>& theta_true,
                               const SweepConfig& cfg) {
  MethodResult res;
  if (method == "signal") {
    const SolveReport report = solve_optimal_policy(inst, prior);
    res.dm_value = report.dm_value;
    res.bic_slack = report.bic_slack;
    return res;
  }
  const std::vector<Region> regions = enumerate_regions(inst, prior);
  if (method == "full") {
    std::vector<int> choice;
    for (const Region& r : regions)
      choice.push_back(honest_action(inst, r.key));
    const SignalingPolicy policy = constant_policy(inst, regions, choice);
    res.dm_value = expected_dm_utility(inst, regions, policy);
    res.bic_slack = verify_bic(inst, regions, policy);
    return res;
  }
  if (method == "none") {
    const auto [action, value] = no_information_value(inst, prior);
    const std::vector<int> choice(regions.size(), action);
    const SignalingPolicy policy = constant_policy(inst, regions, choice);
    res.dm_value = value;
    res.bic_slack = verify_bic(inst, regions, policy);
    return res;
  }
  if (method == "approx") {
    const ApproxReport report =
        approximate_policy(inst, gaussian_sampler(gauss), theta_true,
                           cfg.approx_epsilon, cfg.approx_delta, cfg.seed);
    res.dm_value = report.lp_value;
    res.bic_slack = verify_eps_bic(inst, report, report.policy);
    return res;
  }
  throw std::invalid_argument("unknown method: " + method);
}

inline std::string sanitize_status(std::string text) {
  for (char& c : text)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return text;
}

}  // namespace detail

inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  if (cfg.cost_grid.empty() || cfg.delta_grid.empty() ||
      cfg.sigma2_list.empty() || cfg.methods.empty())
    throw std::invalid_argument("sweep grids and methods must be nonempty");
  if (cfg.mc_samples < 1)
    throw std::invalid_argument("mc_samples must be >= 1");

  std::vector<std::vector<double>> subjects = cfg.roster;
  if (subjects.empty()) subjects.push_back(cfg.base_x0);

  std::vector<SweepRow> rows;
  for (double sigma2 : cfg.sigma2_list) {
    GaussianPrior gauss;
    gauss.mean = cfg.theta_mean;
    gauss.std_dev.assign(cfg.theta_mean.size(), std::sqrt(sigma2));
    const DiscretePrior prior =
        mc_discretize(gauss, cfg.mc_samples, cfg.seed);
    for (double cost : cfg.cost_grid) {
      for (double delta : cfg.delta_grid) {
        for (const std::string& method : cfg.methods) {
          SweepRow row;
          row.sigma2 = sigma2;
          row.action_cost = cost;
          row.action_delta = delta;
          row.method = method;
          row.seed = cfg.seed;
          row.status = "ok";
          double total_value = 0.0;
          double min_slack = std::numeric_limits<double>::infinity();
          const auto start = std::chrono::steady_clock::now();
          try {
            for (const std::vector<double>& x0 : subjects) {
              const Instance inst =
                  detail::sweep_cell_instance(cfg, x0, cost, delta);
              const detail::MethodResult res = detail::run_method(
                  method, inst, prior, gauss, cfg.theta_mean, cfg);
              total_value += res.dm_value;
              min_slack = std::min(min_slack, res.bic_slack);
            }
            row.dm_value = total_value;
            row.bic_slack = min_slack;
          } catch (const std::exception& e) {
            row.dm_value = std::numeric_limits<double>::quiet_NaN();
            row.bic_slack = std::numeric_limits<double>::quiet_NaN();
            row.status = detail::sanitize_status(std::string("error: ") +
                                                 e.what());
          }
          const auto stop = std::chrono::steady_clock::now();
          row.runtime_ms =
              std::chrono::duration<double, std::milli>(stop - start).count();
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

// Signaling must weakly beat both baselines in every cell where all three
// were computed; slack 1e-7 for LP tolerances.
inline bool sweep_dominance_ok(const std::vector<SweepRow>& rows) {
  std::map<std::tuple<double, double, double>, std::map<std::string, double>>
      cells;
  for (const SweepRow& row : rows) {
    if (row.status != "ok") continue;
    cells[{row.sigma2, row.action_cost, row.action_delta}][row.method] =
        row.dm_value;
  }
  for (const auto& [cell, values] : cells) {
    const auto signal = values.find("signal");
    if (signal == values.end()) continue;
    for (const char* baseline : {"full", "none"}) {
      const auto it = values.find(baseline);
      if (it != values.end() && signal->second < it->second - 1e-7)
        return false;
    }
  }
  return true;
}

inline std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "sigma2,action_costs,action_deltas,method,dm_value,bic_slack,"
      "runtime_ms,seed,status\n";
  char buf[256];
  for (const SweepRow& row : rows) {
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,", row.sigma2,
                  row.action_cost, row.action_delta);
    out += buf;
    out += row.method;
    std::snprintf(buf, sizeof(buf), ",%.12g,%.12g,%.3f,%llu,", row.dm_value,
                  row.bic_slack, row.runtime_ms,
                  static_cast<unsigned long long>(row.seed));
    out += buf;
    out += row.status;
    out += '\n';
  }
  return out;
}

}  // namespace persuasion

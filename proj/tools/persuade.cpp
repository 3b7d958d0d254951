// Command-line front end: solve signaling policies exactly or by sampling,
// evaluate the one-feature closed form, fit costs from comparison counts,
// run experiment sweeps, and verify policies.
//
// Exit codes: 0 success, 2 invalid config, 3 solver failure,
// 4 incentive or dominance check violation.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "persuasion/config.hpp"
#include "persuasion/harness.hpp"
#include "persuasion/oned.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidConfig = 2;
constexpr int kExitSolverFailure = 3;
constexpr int kExitCheckViolation = 4;

persuasion::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  persuasion::json j;
  in >> j;
  return j;
}

int run_solve_exact(const std::string& config_path) {
  const persuasion::json config = load_json(config_path);
  const persuasion::Instance inst =
      persuasion::parse_instance(config.at("instance"));
  const persuasion::DiscretePrior prior =
      persuasion::resolve_prior(config, inst.theta_dim());
  const persuasion::SolveReport report =
      persuasion::solve_optimal_policy(inst, prior);
  persuasion::json out = persuasion::report_to_json(report);
  out["full_information_value"] =
      persuasion::full_information_value(inst, prior);
  const auto [none_action, none_value] =
      persuasion::no_information_value(inst, prior);
  out["no_information_action"] = none_action;
  out["no_information_value"] = none_value;
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_solve_approx(const std::string& config_path, double epsilon,
                     double delta, std::uint64_t seed) {
  const persuasion::json config = load_json(config_path);
  const persuasion::Instance inst =
      persuasion::parse_instance(config.at("instance"));
  const persuasion::json& jp = config.at("prior");
  if (jp.at("type").get<std::string>() != "gaussian")
    throw std::invalid_argument("solve-approx expects a gaussian prior");
  const persuasion::GaussianPrior gauss =
      persuasion::parse_gaussian_prior(jp);
  std::vector<double> theta_true =
      config.value("theta_true", gauss.mean);
  if (theta_true.size() != inst.theta_dim())
    throw std::invalid_argument("theta_true length must be dim+1");
  const persuasion::ApproxReport report = persuasion::approximate_policy(
      inst, persuasion::gaussian_sampler(gauss), theta_true, epsilon, delta,
      seed);
  persuasion::json out = persuasion::report_to_json(report);
  out["eps_bic_slack"] =
      persuasion::verify_eps_bic(inst, report, report.policy);
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_oned(double x0, double delta, double cost, double mu, double sigma,
             bool with_lp) {
  persuasion::OneDExample ex;
  ex.x0 = x0;
  ex.delta = delta;
  ex.cost = cost;
  ex.prior_mean = mu;
  ex.prior_std = sigma;
  const persuasion::RegionProbs probs = persuasion::region_probs(ex);
  const persuasion::PayoffRow row = persuasion::payoff_row(probs.pM, cost);
  persuasion::json out;
  out["pL"] = probs.pL;
  out["pM"] = probs.pM;
  out["pH"] = probs.pH;
  out["q"] = persuasion::bic_q(probs.pM, cost);
  out["none_value"] = row.none_value;
  out["signaling_value"] = row.signaling_value;
  out["full_value"] = row.full_value;
  if (with_lp) {
    const auto [inst, prior] = persuasion::discretize(ex);
    out["lp_value"] = persuasion::solve_optimal_policy(inst, prior).dm_value;
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_fit_costs(const std::string& counts_path) {
  const persuasion::json j = load_json(counts_path);
  persuasion::PairwiseComparisons comp;
  comp.n = j.at("n").get<int>();
  comp.wins = j.at("wins").get<std::vector<std::vector<long long>>>();
  const std::vector<double> costs = persuasion::fit_bradley_terry(comp);
  persuasion::json out;
  out["costs"] = costs;
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_path) {
  const persuasion::json config = load_json(config_path);
  const persuasion::SweepConfig cfg = persuasion::parse_sweep_config(config);
  const std::vector<persuasion::SweepRow> rows = persuasion::run_sweep(cfg);
  const std::string csv = persuasion::to_csv(rows);
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    out << csv;
  }
  for (const persuasion::SweepRow& row : rows) {
    if (row.status != "ok") {
      std::cerr << "cell failed: " << row.status << "\n";
      return kExitSolverFailure;
    }
  }
  if (!persuasion::sweep_dominance_ok(rows)) {
    std::cerr << "dominance check violated: signaling fell below a baseline\n";
    return kExitCheckViolation;
  }
  return kExitOk;
}

int run_verify(const std::string& policy_path, const std::string& config_path) {
  const persuasion::json config = load_json(config_path);
  const persuasion::Instance inst =
      persuasion::parse_instance(config.at("instance"));
  const persuasion::DiscretePrior prior =
      persuasion::resolve_prior(config, inst.theta_dim());
  const persuasion::SignalingPolicy policy =
      persuasion::policy_from_json(load_json(policy_path));
  const std::vector<persuasion::Region> regions =
      persuasion::enumerate_regions(inst, prior);
  const double slack = persuasion::verify_bic(inst, regions, policy);
  persuasion::json out;
  out["bic_slack"] = slack;
  out["bic"] = slack >= -1e-7;
  std::cout << out.dump(2) << "\n";
  return slack >= -1e-7 ? kExitOk : kExitCheckViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signaling-policy solver for strategic classification"};
  app.require_subcommand(1);

  std::string config_path;
  std::string policy_path;
  std::string counts_path;
  std::string out_path;
  double epsilon = 0.2;
  double delta = 0.1;
  std::uint64_t seed = 0;
  double x0 = 0.0, action_delta = 1.0, cost = 0.5, mu = 0.0, sigma = 1.0;
  bool with_lp = false;

  CLI::App* solve_exact =
      app.add_subcommand("solve-exact", "solve the signaling LP exactly");
  solve_exact->add_option("config", config_path, "instance + prior JSON")
      ->required();

  CLI::App* solve_approx = app.add_subcommand(
      "solve-approx", "solve by prior sampling with an epsilon guarantee");
  solve_approx->add_option("config", config_path, "instance + prior JSON")
      ->required();
  solve_approx->add_option("--epsilon", epsilon, "approximation epsilon");
  solve_approx->add_option("--delta", delta, "failure probability");
  solve_approx->add_option("--seed", seed, "sampling seed");

  CLI::App* oned =
      app.add_subcommand("oned", "one-feature closed-form payoffs");
  oned->add_option("--x0", x0, "initial feature value");
  oned->add_option("--delta", action_delta, "feature gain of the action");
  oned->add_option("--cost", cost, "action cost, in (0,2)");
  oned->add_option("--mu", mu, "prior mean of theta");
  oned->add_option("--sigma", sigma, "prior std of theta");
  oned->add_flag("--lp", with_lp, "cross-check with the exact solver");

  CLI::App* fit_costs = app.add_subcommand(
      "fit-costs", "fit action costs from pairwise comparison counts");
  fit_costs->add_option("counts", counts_path, "counts JSON")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "run an experiment sweep");
  sweep->add_option("config", config_path, "sweep JSON")->required();
  sweep->add_option("--out", out_path, "CSV output path (default stdout)");

  CLI::App* verify =
      app.add_subcommand("verify", "check a policy's incentive compatibility");
  verify->add_option("policy", policy_path, "policy JSON")->required();
  verify->add_option("config", config_path, "instance + prior JSON")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_exact->parsed()) return run_solve_exact(config_path);
    if (solve_approx->parsed())
      return run_solve_approx(config_path, epsilon, delta, seed);
    if (oned->parsed())
      return run_oned(x0, action_delta, cost, mu, sigma, with_lp);
    if (fit_costs->parsed()) return run_fit_costs(counts_path);
    if (sweep->parsed()) return run_sweep_cmd(config_path, out_path);
    if (verify->parsed()) return run_verify(policy_path, config_path);
  } catch (const persuasion::SolverStallError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolverFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const persuasion::json::exception& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolverFailure;
  }
  return kExitOk;
}

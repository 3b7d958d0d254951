#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "persuasion/exact.hpp"
#include "persuasion/lp.hpp"
#include "persuasion/model.hpp"
#include "persuasion/regions.hpp"

namespace persuasion {

// Output of one sampling-solver run. recommendation_dist is the policy row
// for the region containing the true rule; the full policy over all sampled
// regions rides along for verification.
struct ApproxReport {
  std::vector<double> recommendation_dist;
  std::vector<Region> sampled_regions;
  SignalingPolicy policy;
  double lp_value = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  std::int64_t K = 0;
  std::uint64_t seed = 0;
};

// Number of prior samples needed for an (epsilon, delta) guarantee with m
// actions: ceil((2/eps^2) * ln(2(m^2+1)/delta)). Natural log; m counts all
// actions including the status quo.
inline std::int64_t sample_count(double epsilon, double delta, int m) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("epsilon must be in (0,1]");
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::invalid_argument("delta must be in (0,1]");
  if (m < 1) throw std::invalid_argument("need at least one action");
  const double mm = static_cast<double>(m) * static_cast<double>(m);
  const double k = (2.0 / (epsilon * epsilon)) *
                   std::log(2.0 * (mm + 1.0) / delta);
  return static_cast<std::int64_t>(std::ceil(k));
}

namespace detail {

// Unbiased uniform draw from {0, ..., n-1} by rejection, so the result does
// not depend on the standard library's distribution internals.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t bound = (UINT64_MAX / n) * n;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= bound);
  return r % n;
}

}  // namespace detail

// One run of the sampling solver. Draws the insertion slot first, then K-1
// rules from the sampler, places the true rule in the slot, groups the K
// rules into empirical regions, and solves the relaxed LP whose obedience
// rows carry a +epsilon bonus inside the weighted sum. Everything observed
// stays in the LP, even single-sample regions.
inline ApproxReport approximate_policy(const Instance& inst,
                                       const ThetaSampler& sampler,
                                       const std::vector<double>& theta_true,
                                       double epsilon, double delta,
                                       std::uint64_t seed) {
  const std::size_t na = inst.num_actions();
  for (std::size_t a = 0; a < na; ++a) {
    const double u = inst.action(static_cast<int>(a)).dm_utility;
    if (u < 0.0 || u > 1.0)
      throw std::invalid_argument(
          "sampling solver requires dm_utility in [0,1]; normalize first");
  }
  const std::int64_t K = sample_count(epsilon, delta, static_cast<int>(na));

  std::mt19937_64 rng(seed);
  const std::uint64_t slot =
      detail::uniform_index(rng, static_cast<std::uint64_t>(K));
  std::vector<std::vector<double>> thetas(static_cast<std::size_t>(K));
  for (std::size_t k = 0; k < thetas.size(); ++k)
    thetas[k] = (k == slot) ? theta_true : sampler(rng);

  // Empirical regions, masses as exact sample fractions.
  std::map<RegionKey, Region> grouped;
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    RegionKey key = region_key(inst, thetas[k]);
    Region& r = grouped[key];
    if (r.members.empty()) r.key = key;
    r.members.push_back(static_cast<int>(k));
  }
  std::vector<Region> regions;
  regions.reserve(grouped.size());
  for (auto& [key, region] : grouped) {
    region.mass = static_cast<double>(region.members.size()) /
                  static_cast<double>(K);
    regions.push_back(std::move(region));
  }

  LpProblem lp = build_opt_lp(inst, regions);
  // Relax every obedience row: coefficient mass * (u_diff + epsilon) on the
  // recommended action's variable.
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t ap = 0; ap < na; ++ap)
      for (std::size_t r = 0; r < regions.size(); ++r)
        lp.G[a * na + ap][r * na + a] += regions[r].mass * epsilon;

  const LpSolution sol = solve(lp);
  if (sol.status != LpStatus::optimal)
    throw std::runtime_error("sampling LP did not reach optimality");

  ApproxReport report;
  report.sampled_regions = regions;
  report.policy.regions.reserve(regions.size());
  report.policy.probs.reserve(regions.size());
  for (std::size_t r = 0; r < regions.size(); ++r) {
    report.policy.regions.push_back(regions[r].key);
    report.policy.probs.emplace_back(sol.x.begin() + r * na,
                                     sol.x.begin() + (r + 1) * na);
  }
  report.lp_value = sol.value;
  report.epsilon = epsilon;
  report.delta = delta;
  report.K = K;
  report.seed = seed;

  const RegionKey true_key = region_key(inst, theta_true);
  for (std::size_t r = 0; r < regions.size(); ++r)
    if (regions[r].key == true_key)
      report.recommendation_dist = report.policy.probs[r];
  return report;
}

// Minimum empirical obedience slack of the relaxed solution, measured
// without the epsilon bonus. Must come out >= -epsilon - 1e-7.
inline double verify_eps_bic(const Instance& inst, const ApproxReport& report,
                             const SignalingPolicy& full_policy) {
  const std::size_t na = inst.num_actions();
  std::map<RegionKey, std::size_t> index;
  for (std::size_t r = 0; r < full_policy.regions.size(); ++r)
    index[full_policy.regions[r]] = r;
  std::vector<std::size_t> rows;
  rows.reserve(report.sampled_regions.size());
  for (const Region& region : report.sampled_regions) {
    const auto it = index.find(region.key);
    if (it == index.end())
      throw std::invalid_argument("policy is missing a sampled region key");
    rows.push_back(it->second);
  }
  double min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t ap = 0; ap < na; ++ap) {
      if (ap == a) continue;
      double slack = 0.0;
      for (std::size_t r = 0; r < report.sampled_regions.size(); ++r) {
        const Region& region = report.sampled_regions[r];
        const double diff =
            detail::region_utility(inst, region.key, static_cast<int>(a)) -
            detail::region_utility(inst, region.key, static_cast<int>(ap));
        slack += region.mass * full_policy.prob(rows[r], a) * diff;
      }
      min_slack = std::min(min_slack, slack);
    }
  }
  return min_slack;
}

// Rounds a policy toward honesty: any signal whose marginal probability is
// at most epsilon/(2m) has its mass reassigned, region by region, to that
// region's honest action. Keeps incentive compatibility (the kept rows were
// already obedient and every added term favors the recommended action) and
// costs at most epsilon/2 in value when dm utilities sit in [0,1].
inline SignalingPolicy large_or_honest_policy(const Instance& inst,
                                              const std::vector<Region>& regions,
                                              const SignalingPolicy& optimal,
                                              double epsilon) {
  const std::size_t na = inst.num_actions();
  std::map<RegionKey, std::size_t> index;
  for (std::size_t r = 0; r < optimal.regions.size(); ++r)
    index[optimal.regions[r]] = r;
  std::vector<std::size_t> rows;
  rows.reserve(regions.size());
  for (const Region& region : regions) {
    const auto it = index.find(region.key);
    if (it == index.end())
      throw std::invalid_argument("policy is missing a region key");
    rows.push_back(it->second);
  }

  const double threshold =
      epsilon / (2.0 * static_cast<double>(na));
  std::vector<bool> small(na, false);
  for (std::size_t a = 0; a < na; ++a) {
    double marginal = 0.0;
    for (std::size_t r = 0; r < regions.size(); ++r)
      marginal += regions[r].mass * optimal.prob(rows[r], a);
    small[a] = marginal <= threshold;
  }

  SignalingPolicy out = optimal;
  for (std::size_t r = 0; r < regions.size(); ++r) {
    const std::size_t row = rows[r];
    const int honest = honest_action(inst, regions[r].key);
    double moved = 0.0;
    for (std::size_t a = 0; a < na; ++a) {
      if (!small[a]) continue;
      moved += out.prob(row, a);
      out.probs[row][a] = 0.0;
    }
    out.probs[row][static_cast<std::size_t>(honest)] += moved;
  }
  return out;
}

}  // namespace persuasion

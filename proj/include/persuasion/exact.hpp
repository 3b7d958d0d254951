#pragma once

#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "persuasion/lp.hpp"
#include "persuasion/model.hpp"
#include "persuasion/regions.hpp"

namespace persuasion {

// Result of solving for an optimal signaling policy.
struct SolveReport {
  SignalingPolicy policy;
  double dm_value = 0.0;
  double bic_slack = 0.0;
  std::vector<double> region_masses;
};

namespace detail {

// Subject's payoff from action a inside a region: the region's outcome bit
// for a decides the classification term.
inline double region_utility(const Instance& inst, const RegionKey& key,
                             int a) {
  return subject_utility(inst, a, key.positive(a));
}

inline std::map<RegionKey, std::size_t> policy_index(
    const SignalingPolicy& policy) {
  std::map<RegionKey, std::size_t> index;
  for (std::size_t r = 0; r < policy.regions.size(); ++r)
    index[policy.regions[r]] = r;
  return index;
}

}  // namespace detail

// Subject's best response to full knowledge of the region: the utility
// argmax, ties broken by lower cost and then lower action id.
inline int honest_action(const Instance& inst, const RegionKey& key) {
  int best = 0;
  double best_u = detail::region_utility(inst, key, 0);
  for (int a = 1; a < static_cast<int>(inst.num_actions()); ++a) {
    const double u = detail::region_utility(inst, key, a);
    if (u > best_u ||
        (u == best_u && inst.action(a).cost < inst.action(best).cost)) {
      best = a;
      best_u = u;
    }
  }
  return best;
}

// Assembles the signaling LP over the given regions. Variables are ordered
// region-major, action-minor: x[r*(m+1) + a] = p(recommend a | region r).
// All (m+1)^2 ordered obedience rows are emitted, including the vacuous
// a = a' ones, so row indices stay a simple pair encoding.
inline LpProblem build_opt_lp(const Instance& inst,
                              const std::vector<Region>& regions) {
  if (regions.empty()) throw std::invalid_argument("no regions");
  const std::size_t na = inst.num_actions();
  const std::size_t nr = regions.size();
  LpProblem p;
  p.num_vars = nr * na;
  p.objective.assign(p.num_vars, 0.0);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t a = 0; a < na; ++a)
      p.objective[r * na + a] =
          regions[r].mass * inst.action(static_cast<int>(a)).dm_utility;

  // Obedience: recommending a must beat every deviation a' in expectation
  // over the posterior the recommendation induces.
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t ap = 0; ap < na; ++ap) {
      std::vector<double> row(p.num_vars, 0.0);
      for (std::size_t r = 0; r < nr; ++r) {
        const double diff =
            detail::region_utility(inst, regions[r].key, static_cast<int>(a)) -
            detail::region_utility(inst, regions[r].key, static_cast<int>(ap));
        row[r * na + a] = regions[r].mass * diff;
      }
      p.G.push_back(std::move(row));
      p.h.push_back(0.0);
    }
  }

  // One distribution per region.
  for (std::size_t r = 0; r < nr; ++r) {
    std::vector<double> row(p.num_vars, 0.0);
    for (std::size_t a = 0; a < na; ++a) row[r * na + a] = 1.0;
    p.A.push_back(std::move(row));
    p.b.push_back(1.0);
  }
  return p;
}

// Objective value of a policy: sum over regions and actions of
// mass * p(recommend a | region) * u_dm(a).
inline double expected_dm_utility(const Instance& inst,
                                  const std::vector<Region>& regions,
                                  const SignalingPolicy& policy) {
  const auto index = detail::policy_index(policy);
  double total = 0.0;
  for (const Region& region : regions) {
    const auto it = index.find(region.key);
    if (it == index.end())
      throw std::invalid_argument("policy is missing a region key");
    for (std::size_t a = 0; a < inst.num_actions(); ++a)
      total += region.mass * policy.prob(it->second, a) *
               inst.action(static_cast<int>(a)).dm_utility;
  }
  return total;
}

// Minimum obedience slack over ordered action pairs (a, a') where a is
// recommended with positive marginal probability. The policy is incentive
// compatible iff the result is >= -tolerance.
inline double verify_bic(const Instance& inst,
                         const std::vector<Region>& regions,
                         const SignalingPolicy& policy) {
  const auto index = detail::policy_index(policy);
  const std::size_t na = inst.num_actions();
  std::vector<std::size_t> rows;
  rows.reserve(regions.size());
  for (const Region& region : regions) {
    const auto it = index.find(region.key);
    if (it == index.end())
      throw std::invalid_argument("policy is missing a region key");
    rows.push_back(it->second);
  }
  double min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < na; ++a) {
    double marginal = 0.0;
    for (std::size_t r = 0; r < regions.size(); ++r)
      marginal += regions[r].mass * policy.prob(rows[r], a);
    if (marginal <= 1e-12) continue;
    for (std::size_t ap = 0; ap < na; ++ap) {
      if (ap == a) continue;
      double slack = 0.0;
      for (std::size_t r = 0; r < regions.size(); ++r) {
        const double diff =
            detail::region_utility(inst, regions[r].key, static_cast<int>(a)) -
            detail::region_utility(inst, regions[r].key,
                                   static_cast<int>(ap));
        slack += regions[r].mass * policy.prob(rows[r], a) * diff;
      }
      min_slack = std::min(min_slack, slack);
    }
  }
  return min_slack;
}

// Solves for the optimal signaling policy under a discrete prior. Regions
// with zero prior mass are dropped before the LP; the honest policy is
// always feasible, so a well-formed input never comes back infeasible.
inline SolveReport solve_optimal_policy(const Instance& inst,
                                        const DiscretePrior& prior) {
  std::vector<Region> regions;
  for (Region& r : enumerate_regions(inst, prior))
    if (r.mass > 0.0) regions.push_back(std::move(r));
  const LpProblem lp = build_opt_lp(inst, regions);
  const LpSolution sol = solve(lp);
  if (sol.status != LpStatus::optimal)
    throw std::runtime_error("signaling LP did not reach optimality");

  const std::size_t na = inst.num_actions();
  SolveReport report;
  report.policy.regions.reserve(regions.size());
  report.policy.probs.reserve(regions.size());
  report.region_masses.reserve(regions.size());
  for (std::size_t r = 0; r < regions.size(); ++r) {
    report.policy.regions.push_back(regions[r].key);
    report.policy.probs.emplace_back(sol.x.begin() + r * na,
                                     sol.x.begin() + (r + 1) * na);
    report.region_masses.push_back(regions[r].mass);
  }
  report.dm_value = expected_dm_utility(inst, regions, report.policy);
  report.bic_slack = verify_bic(inst, regions, report.policy);
  return report;
}

// Baseline: the rule is revealed, the subject best-responds per region.
inline double full_information_value(const Instance& inst,
                                     const DiscretePrior& prior) {
  double total = 0.0;
  for (const Region& region : enumerate_regions(inst, prior))
    total += region.mass * inst.action(honest_action(inst, region.key)).dm_utility;
  return total;
}

// Baseline: no signal at all, the subject best-responds to the prior.
// Returns the chosen action and the decision maker's utility for it.
inline std::pair<int, double> no_information_value(const Instance& inst,
                                                   const DiscretePrior& prior) {
  const std::vector<Region> regions = enumerate_regions(inst, prior);
  int best = 0;
  double best_u = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < static_cast<int>(inst.num_actions()); ++a) {
    double u = 0.0;
    for (const Region& region : regions)
      u += region.mass * detail::region_utility(inst, region.key, a);
    if (u > best_u ||
        (u == best_u && inst.action(a).cost < inst.action(best).cost)) {
      best = a;
      best_u = u;
    }
  }
  return {best, inst.action(best).dm_utility};
}

}  // namespace persuasion

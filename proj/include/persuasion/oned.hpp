#pragma once

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "persuasion/model.hpp"
#include "persuasion/normal.hpp"

namespace persuasion {

// The one-feature, one-improvement-action setting with a Gaussian prior
// over the (negated) acceptance threshold.
struct OneDExample {
  double x0 = 0.0;
  double delta = 0.0;       // feature gain of the action, > 0
  double cost = 0.0;        // action cost, in (0,2)
  double prior_mean = 0.0;  // mean of theta
  double prior_std = 0.0;   // std of theta, > 0
};

// Prior mass of the three threshold regions: L (rejected even after the
// action), M (accepted only with the action), H (accepted regardless).
struct RegionProbs {
  double pL = 0.0;
  double pM = 0.0;
  double pH = 0.0;
};

struct PayoffRow {
  double none_value = 0.0;
  double signaling_value = 0.0;
  double full_value = 0.0;
};

namespace detail {

inline void check_oned(const OneDExample& ex) {
  if (!(ex.delta > 0.0)) throw std::invalid_argument("delta must be > 0");
  if (!(ex.cost > 0.0 && ex.cost < 2.0))
    throw std::invalid_argument("cost must be in (0,2)");
  if (!(ex.prior_std > 0.0))
    throw std::invalid_argument("prior std must be > 0");
}

}  // namespace detail

inline RegionProbs region_probs(const OneDExample& ex) {
  detail::check_oned(ex);
  RegionProbs p;
  p.pL = normal_cdf((-ex.x0 - ex.delta - ex.prior_mean) / ex.prior_std);
  p.pH = 1.0 - normal_cdf((-ex.x0 - ex.prior_mean) / ex.prior_std);
  p.pM = 1.0 - p.pL - p.pH;
  return p;
}

// Largest lie probability that keeps the recommendation credible:
// q = pM (2 - c) / (c (1 - pM)), clamped to [0,1]. At pM = 1 the lying
// regions have no mass and q is 1 by continuity.
inline double bic_q(double pM, double cost) {
  if (!(pM >= 0.0 && pM <= 1.0))
    throw std::invalid_argument("pM must be in [0,1]");
  if (!(cost > 0.0 && cost < 2.0))
    throw std::invalid_argument("cost must be in (0,2)");
  if (pM >= 1.0) return 1.0;
  const double q = pM * (2.0 - cost) / (cost * (1.0 - pM));
  return std::clamp(q, 0.0, 1.0);
}

// Decision maker's expected utility under the three information regimes:
// saying nothing, the optimal credible recommendation, and full disclosure.
inline PayoffRow payoff_row(double pM, double cost) {
  PayoffRow row;
  row.none_value = (2.0 * pM >= cost) ? 1.0 : 0.0;
  row.signaling_value = pM + bic_q(pM, cost) * (1.0 - pM);
  row.full_value = pM;
  return row;
}

// The family of instances whose signaling-vs-disclosure gap grows without
// bound as eps shrinks: cost 2*eps and middle mass eps*(1-eps) give
// signaling value 1-eps against full-disclosure value eps*(1-eps).
struct UnboundedGapInstance {
  double pM = 0.0;
  double cost = 0.0;
  PayoffRow predicted;
};

inline UnboundedGapInstance unbounded_instance(double eps) {
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("eps must be in (0, 0.5)");
  UnboundedGapInstance out;
  out.cost = 2.0 * eps;
  out.pM = eps * (1.0 - eps);
  out.predicted.none_value = 0.0;
  out.predicted.signaling_value = 1.0 - eps;
  out.predicted.full_value = out.pM;
  return out;
}

// Bridges the closed form to the general solver: a d=1 instance with the
// status-quo and improvement actions, and a discrete prior putting each
// region's mass on one interior representative threshold. Zero-mass
// regions are left out of the support.
inline std::pair<Instance, DiscretePrior> discretize(const OneDExample& ex) {
  detail::check_oned(ex);
  const RegionProbs p = region_probs(ex);

  Action null_action;
  null_action.id = 0;
  null_action.label = "a0";
  null_action.delta_x = {0.0};
  Action improve;
  improve.id = 1;
  improve.label = "a1";
  improve.delta_x = {ex.delta};
  improve.cost = ex.cost;
  improve.dm_utility = 1.0;
  Instance inst({ex.x0}, {null_action, improve});

  DiscretePrior prior;
  const double reps[3] = {-ex.x0 - ex.delta - ex.prior_std,
                          -ex.x0 - ex.delta / 2.0, -ex.x0 + ex.prior_std};
  const double masses[3] = {p.pL, p.pM, p.pH};
  for (int i = 0; i < 3; ++i) {
    if (masses[i] == 0.0) continue;
    prior.support.push_back({1.0, reps[i]});
    prior.probs.push_back(masses[i]);
  }
  return {std::move(inst), std::move(prior)};
}

}  // namespace persuasion

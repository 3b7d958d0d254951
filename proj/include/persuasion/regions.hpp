#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "persuasion/model.hpp"

namespace persuasion {

// Outcome profile of one equivalence region: outcomes[a] is true iff action a
// yields a positive classification anywhere in the region. Canonical form
// stores the all-false profile as all-true; those two profiles give every
// action the same utility shift, so they are one region, and no other pair
// of distinct profiles ever merges.
struct RegionKey {
  std::vector<char> outcomes;

  bool operator==(const RegionKey& other) const {
    return outcomes == other.outcomes;
  }
  bool operator<(const RegionKey& other) const {
    return std::lexicographical_compare(outcomes.begin(), outcomes.end(),
                                        other.outcomes.begin(),
                                        other.outcomes.end());
  }
  bool positive(int action_id) const {
    return outcomes[static_cast<std::size_t>(action_id)] != 0;
  }
};

inline RegionKey canonicalize(RegionKey key) {
  bool any = false;
  for (char c : key.outcomes) any = any || (c != 0);
  if (!any) std::fill(key.outcomes.begin(), key.outcomes.end(), char(1));
  return key;
}

// One enumerated region under a discrete prior: its profile, total prior
// mass, and which support points fell into it.
struct Region {
  RegionKey key;
  double mass = 0.0;
  std::vector<int> members;
};

// A signaling policy: one row per region, one column per action, each row a
// distribution over recommended actions. Rows may carry -1e-9 of numerical
// dust from the LP; prob() clamps on read.
struct SignalingPolicy {
  std::vector<RegionKey> regions;
  std::vector<std::vector<double>> probs;

  double prob(std::size_t region, std::size_t action) const {
    return std::max(0.0, probs[region][action]);
  }
};

// Draws one θ vector from whatever distribution the caller encodes.
using ThetaSampler = std::function<std::vector<double>(std::mt19937_64&)>;

inline RegionKey region_key(const Instance& inst,
                            const std::vector<double>& theta) {
  RegionKey key;
  key.outcomes.resize(inst.num_actions());
  for (std::size_t a = 0; a < inst.num_actions(); ++a)
    key.outcomes[a] =
        classify(inst, theta, static_cast<int>(a)) > 0 ? char(1) : char(0);
  return canonicalize(std::move(key));
}

// Groups the prior's support points by canonical profile. Output order is
// lexicographic on the key so everything downstream (LP columns, reports)
// is reproducible.
inline std::vector<Region> enumerate_regions(const Instance& inst,
                                             const DiscretePrior& prior) {
  if (prior.support.size() != prior.probs.size() || prior.support.empty())
    throw std::invalid_argument("prior support/probs length mismatch");
  std::map<RegionKey, Region> grouped;
  for (std::size_t i = 0; i < prior.support.size(); ++i) {
    RegionKey key = region_key(inst, prior.support[i]);
    Region& r = grouped[key];
    if (r.members.empty()) r.key = key;
    r.mass += prior.probs[i];
    r.members.push_back(static_cast<int>(i));
  }
  std::vector<Region> out;
  out.reserve(grouped.size());
  for (auto& [key, region] : grouped) out.push_back(std::move(region));
  return out;
}

// Componentwise shift dominance: a is dominated by a_prime iff every
// coordinate of its shift is <= the other's and at least one is strictly
// less. An action never dominates itself.
inline bool is_dominated(const Instance& inst, int a, int a_prime) {
  const std::vector<double>& da = inst.action(a).delta_x;
  const std::vector<double>& db = inst.action(a_prime).delta_x;
  bool strict = false;
  for (std::size_t j = 0; j < da.size(); ++j) {
    if (da[j] > db[j]) return false;
    if (da[j] < db[j]) strict = true;
  }
  return strict;
}

// Closed-form region count for axis-aligned action sets: product of the
// per-feature level counts, minus one.
inline long long theoretical_region_count(
    const std::vector<int>& m_per_feature) {
  if (m_per_feature.empty())
    throw std::invalid_argument("need at least one feature");
  long long product = 1;
  for (int m : m_per_feature) {
    if (m <= 0) throw std::invalid_argument("level counts must be positive");
    product *= m;
  }
  return product - 1;
}

// Distinct canonical profiles among n sampled rules. Deterministic given the
// seed; nested sample sets (same seed, larger n) can only grow the count.
inline int empirical_region_count(const Instance& inst,
                                  const ThetaSampler& sampler, int n,
                                  std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("need at least one sample");
  std::mt19937_64 rng(seed);
  std::set<RegionKey> seen;
  for (int i = 0; i < n; ++i) seen.insert(region_key(inst, sampler(rng)));
  return static_cast<int>(seen.size());
}

}  // namespace persuasion

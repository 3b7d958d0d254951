#include "persuasion/oned.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "persuasion/exact.hpp"
#include "oracles.hpp"

namespace {

using persuasion::bic_q;
using persuasion::discretize;
using persuasion::OneDExample;
using persuasion::payoff_row;
using persuasion::PayoffRow;
using persuasion::region_probs;
using persuasion::RegionProbs;
using persuasion::unbounded_instance;

OneDExample credit_example() {
  OneDExample ex;
  ex.x0 = 660.0;
  ex.delta = 40.0;
  ex.cost = 0.5;
  ex.prior_mean = -650.0;
  ex.prior_std = 50.0;
  return ex;
}

TEST(RegionProbs, FrozenCreditExample) {
  // Boundary z-scores are exactly -1 and -0.2 here, so the masses are
  // pinned Gaussian tail values.
  const RegionProbs p = region_probs(credit_example());
  EXPECT_NEAR(p.pL, 0.15865525393145707, 1e-15);
  EXPECT_NEAR(p.pH, 0.579259709439103, 1e-15);
  EXPECT_NEAR(p.pM, 0.26208503662943994, 1e-14);
  EXPECT_NEAR(p.pL + p.pM + p.pH, 1.0, 1e-15);
}

TEST(RegionProbs, SymmetricWhenMeanCentersTheMiddleBand) {
  OneDExample ex;
  ex.x0 = 3.0;
  ex.delta = 2.0;
  ex.cost = 1.0;
  ex.prior_mean = -ex.x0 - ex.delta / 2.0;
  ex.prior_std = 0.7;
  const RegionProbs p = region_probs(ex);
  EXPECT_NEAR(p.pL, p.pH, 1e-15);
}

TEST(RegionProbs, ConcentratedPriorPutsAllMassInOneBand) {
  OneDExample ex;
  ex.x0 = 0.0;
  ex.delta = 1.0;
  ex.cost = 0.5;
  ex.prior_mean = -0.5;  // only the action flips the outcome at this theta
  ex.prior_std = 1e-6;
  const RegionProbs mid = region_probs(ex);
  EXPECT_GT(mid.pM, 1.0 - 1e-12);

  ex.prior_mean = 5.0;  // approved regardless
  const RegionProbs high = region_probs(ex);
  EXPECT_GT(high.pH, 1.0 - 1e-12);
}

TEST(RegionProbs, RejectsIllFormedExamples) {
  OneDExample ex = credit_example();
  ex.delta = 0.0;
  EXPECT_THROW(region_probs(ex), std::invalid_argument);
  ex = credit_example();
  ex.cost = 0.0;
  EXPECT_THROW(region_probs(ex), std::invalid_argument);
  ex.cost = 2.0;
  EXPECT_THROW(region_probs(ex), std::invalid_argument);
  ex = credit_example();
  ex.prior_std = 0.0;
  EXPECT_THROW(region_probs(ex), std::invalid_argument);
}

TEST(BicQ, ClosedFormAndClamping) {
  EXPECT_NEAR(bic_q(0.25, 1.0), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(bic_q(0.2, 1.5), 0.1 / 1.2, 1e-15);
  EXPECT_DOUBLE_EQ(bic_q(0.0, 0.7), 0.0);
  EXPECT_DOUBLE_EQ(bic_q(0.9, 0.5), 1.0);  // raw value 27, clamped
  EXPECT_DOUBLE_EQ(bic_q(1.0, 1.9), 1.0);
}

TEST(BicQ, MonotoneInItsArguments) {
  // More middle mass lets the recommendation lie more often; a higher cost
  // makes the subject harder to persuade.
  double prev = -1.0;
  for (double pM = 0.0; pM <= 0.4001; pM += 0.05) {
    const double q = bic_q(pM, 1.2);
    EXPECT_GE(q, prev);
    prev = q;
  }
  prev = 2.0;
  for (double c = 0.2; c < 1.95; c += 0.1) {
    const double q = bic_q(0.3, c);
    EXPECT_LE(q, prev);
    prev = q;
  }
}

TEST(BicQ, RejectsOutOfRangeArguments) {
  EXPECT_THROW(bic_q(-0.01, 1.0), std::invalid_argument);
  EXPECT_THROW(bic_q(1.01, 1.0), std::invalid_argument);
  EXPECT_THROW(bic_q(0.5, 0.0), std::invalid_argument);
  EXPECT_THROW(bic_q(0.5, 2.0), std::invalid_argument);
}

TEST(PayoffRow, FrozenRows) {
  const PayoffRow tight = payoff_row(0.09, 0.2);
  EXPECT_DOUBLE_EQ(tight.none_value, 0.0);  // 2*0.09 < 0.2
  EXPECT_NEAR(tight.signaling_value, 0.9, 1e-12);
  EXPECT_DOUBLE_EQ(tight.full_value, 0.09);

  const PayoffRow easy = payoff_row(0.5, 1.0);
  EXPECT_DOUBLE_EQ(easy.none_value, 1.0);  // threshold holds with equality
  EXPECT_NEAR(easy.signaling_value, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(easy.full_value, 0.5);

  const PayoffRow empty = payoff_row(0.0, 1.0);
  EXPECT_DOUBLE_EQ(empty.none_value, 0.0);
  EXPECT_DOUBLE_EQ(empty.signaling_value, 0.0);
  EXPECT_DOUBLE_EQ(empty.full_value, 0.0);
}

TEST(PayoffRow, SignalingDominatesBothBaselines) {
  for (double pM = 0.0; pM <= 1.0001; pM += 0.05) {
    for (double c = 0.1; c < 2.0; c += 0.15) {
      const PayoffRow row = payoff_row(std::min(pM, 1.0), c);
      EXPECT_GE(row.signaling_value,
                std::max(row.none_value, row.full_value) - 1e-12)
          << "pM=" << pM << " c=" << c;
    }
  }
}

TEST(UnboundedGap, FrozenFamilyMembers) {
  const auto a = unbounded_instance(0.1);
  EXPECT_NEAR(a.cost, 0.2, 1e-15);
  EXPECT_NEAR(a.pM, 0.09, 1e-15);
  EXPECT_DOUBLE_EQ(a.predicted.none_value, 0.0);
  EXPECT_NEAR(a.predicted.signaling_value, 0.9, 1e-15);
  EXPECT_NEAR(a.predicted.full_value, 0.09, 1e-15);

  const auto b = unbounded_instance(0.01);
  EXPECT_NEAR(b.predicted.signaling_value / b.predicted.full_value, 100.0,
              1e-9);

  EXPECT_THROW(unbounded_instance(0.0), std::invalid_argument);
  EXPECT_THROW(unbounded_instance(0.5), std::invalid_argument);
  EXPECT_THROW(unbounded_instance(-0.1), std::invalid_argument);
}

TEST(UnboundedGap, PredictionMatchesPayoffRow) {
  for (const double eps : {0.3, 0.1, 0.05, 0.01, 0.001}) {
    const auto inst = unbounded_instance(eps);
    const PayoffRow row = payoff_row(inst.pM, inst.cost);
    EXPECT_DOUBLE_EQ(row.none_value, inst.predicted.none_value);
    EXPECT_NEAR(row.signaling_value, inst.predicted.signaling_value, 1e-12);
    EXPECT_NEAR(row.full_value, inst.predicted.full_value, 1e-15);
  }
}

TEST(Discretize, FrozenSupportAndRegions) {
  const auto [inst, prior] = discretize(credit_example());
  ASSERT_EQ(prior.support.size(), 3u);
  EXPECT_DOUBLE_EQ(prior.support[0][0], 1.0);
  EXPECT_DOUBLE_EQ(prior.support[0][1], -750.0);
  EXPECT_DOUBLE_EQ(prior.support[1][1], -680.0);
  EXPECT_DOUBLE_EQ(prior.support[2][1], -610.0);
  const RegionProbs p = region_probs(credit_example());
  EXPECT_DOUBLE_EQ(prior.probs[0], p.pL);
  EXPECT_DOUBLE_EQ(prior.probs[1], p.pM);
  EXPECT_DOUBLE_EQ(prior.probs[2], p.pH);

  // The low and high representatives merge into the no-change region.
  const auto regions = enumerate_regions(inst, prior);
  ASSERT_EQ(regions.size(), 2u);
  EXPECT_FALSE(regions[0].key.outcomes[0]);
  EXPECT_TRUE(regions[0].key.outcomes[1]);
  EXPECT_NEAR(regions[0].mass, p.pM, 1e-15);
  EXPECT_NEAR(regions[1].mass, p.pL + p.pH, 1e-15);
}

TEST(Discretize, DropsEmptyBandsFromTheSupport) {
  OneDExample ex;
  ex.x0 = 0.0;
  ex.delta = 1.0;
  ex.cost = 0.7;
  ex.prior_mean = -0.5;
  ex.prior_std = 0.01;  // far enough out that both tails underflow to zero
  const auto [inst, prior] = discretize(ex);
  ASSERT_EQ(prior.support.size(), 1u);
  EXPECT_DOUBLE_EQ(prior.probs[0], 1.0);
  const auto report = persuasion::solve_optimal_policy(inst, prior);
  EXPECT_NEAR(report.dm_value, 1.0, 1e-9);
}

TEST(Discretize, LpValueMatchesClosedForm) {
  // Interior-q case: cost 1.2 makes the credible lie rate land strictly
  // inside (0,1), so the LP has to reproduce the algebra, not a corner.
  OneDExample ex = credit_example();
  ex.cost = 1.2;
  const RegionProbs p = region_probs(ex);
  const double q = bic_q(p.pM, ex.cost);
  ASSERT_GT(q, 0.0);
  ASSERT_LT(q, 1.0);

  const auto [inst, prior] = discretize(ex);
  const auto report = persuasion::solve_optimal_policy(inst, prior);
  EXPECT_NEAR(report.dm_value, payoff_row(p.pM, ex.cost).signaling_value,
              1e-8);
  ASSERT_EQ(report.policy.regions.size(), 2u);
  EXPECT_NEAR(report.policy.prob(0, 1), 1.0, 1e-8);
  EXPECT_NEAR(report.policy.prob(1, 1), q, 1e-8);
}

TEST(Discretize, LpValueMatchesClosedFormOnRandomExamples) {
  std::mt19937_64 rng(555);
  for (int trial = 0; trial < 25; ++trial) {
    OneDExample ex;
    ex.x0 = oracle::uniform(rng, 0.0, 5.0);
    ex.delta = oracle::uniform(rng, 0.2, 3.0);
    ex.cost = oracle::uniform(rng, 0.05, 1.95);
    ex.prior_mean = oracle::uniform(rng, -6.0, 2.0);
    ex.prior_std = oracle::uniform(rng, 0.3, 3.0);
    const auto [inst, prior] = discretize(ex);
    const auto report = persuasion::solve_optimal_policy(inst, prior);
    const RegionProbs p = region_probs(ex);
    EXPECT_NEAR(report.dm_value,
                payoff_row(p.pM, ex.cost).signaling_value, 1e-8)
        << "trial " << trial;

    // Baselines line up with the closed-form row too.
    EXPECT_NEAR(persuasion::full_information_value(inst, prior), p.pM, 1e-12)
        << "trial " << trial;
  }
}

}  // namespace

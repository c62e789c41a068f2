#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "heritage/scenario.hpp"

using namespace heritage;

namespace {

ScenarioAlternative with_net(const std::string& name, double net) {
  // benefits via uplift only, costs zero; net equals the uplift
  return {name, 0.0, 0.0, 0.0, 0.0, net};
}

AlternativeBuildInputs default_inputs() {
  AlternativeBuildInputs in;
  in.status_quo_p = 0.01;
  in.baseline_budget = 500000;
  in.tev_per_crime = 22640;
  in.crimes_per_year = 50000;
  in.tourism_baseline = 0;
  in.elasticities = {1, 1};
  in.p_max = 0.5;
  in.extra_budget = {500000, 2000000};
  in.redirect_share = {0.5, 0.5};
  return in;
}

}  // namespace

TEST(EvaluateAlternative, Examples) {
  const auto zero = evaluate_alternative({"none"});
  EXPECT_EQ(zero.benefits, 0.0);
  EXPECT_EQ(zero.costs, 0.0);
  EXPECT_EQ(zero.net, 0.0);

  const auto v = evaluate_alternative({"a", 100000, 50000, 10, 22640, 0});
  EXPECT_EQ(v.benefits, 10 * 22640.0);
  EXPECT_EQ(v.costs, 150000.0);
  EXPECT_EQ(v.net, 226400.0 - 150000.0);
  EXPECT_EQ(v.net, 76400.0);

  EXPECT_EQ(evaluate_alternative({"uplift", 1e6, 0, 0, 0, 1e6}).net, 0.0);
}

TEST(EvaluateAlternative, RejectsNegativeInputs) {
  EXPECT_THROW((void)evaluate_alternative({"bad", -1}), Error);
  EXPECT_THROW((void)evaluate_alternative({"bad", 0, 0, -3}), Error);
}

TEST(EvaluateAlternative, LinearInMoney) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> m(0.0, 1e6), c(0.0, 100.0);
  for (int i = 0; i < 500; ++i) {
    const ScenarioAlternative a{"x", m(rng), m(rng), c(rng), m(rng), m(rng) - 5e5};
    ScenarioAlternative twice = a;
    twice.enforcement_budget *= 2;
    twice.redirected_resource_cost *= 2;
    twice.tev_per_averted_crime *= 2;
    twice.tourism_uplift *= 2;
    EXPECT_NEAR(evaluate_alternative(twice).net, 2 * evaluate_alternative(a).net, 1e-6);
  }
}

TEST(OpportunityCost, IdenticalAlternatives) {
  const std::vector<ScenarioAlternative> alts = {{"a", 100000, 50000, 10, 22640, 0}, {"b", 100000, 50000, 10, 22640, 0}};
  for (std::size_t chosen : {0u, 1u}) {
    const auto r = opportunity_cost(alts, chosen);
    EXPECT_EQ(r.opportunity_cost_of_chosen, 76400.0);
    EXPECT_EQ(r.net_differences[0][1], 0.0);
    EXPECT_EQ(r.net_differences[1][0], 0.0);
    EXPECT_FALSE(r.chosen_dominated);
    EXPECT_EQ(r.ranking, (std::vector<std::size_t>{0, 1}));
  }
}

TEST(OpportunityCost, BestRejectedAndDominance) {
  const std::vector<ScenarioAlternative> alts = {{"A", 100000, 50000, 10, 22640, 0}, with_net("B", 10000), with_net("C", -5000)};
  ASSERT_EQ(evaluate_alternative(alts[0]).net, 76400.0);

  const auto a = opportunity_cost(alts, 0);
  EXPECT_EQ(a.opportunity_cost_of_chosen, std::max(10000.0, -5000.0));
  EXPECT_EQ(a.best_rejected, 1u);
  EXPECT_FALSE(a.chosen_dominated);

  const auto c = opportunity_cost(alts, 2);
  EXPECT_EQ(c.opportunity_cost_of_chosen, 76400.0);
  EXPECT_EQ(c.best_rejected, 0u);
  EXPECT_TRUE(c.chosen_dominated);
  EXPECT_EQ(c.net_differences[0][2], 81400.0);
  EXPECT_EQ(c.ranking, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(OpportunityCost, Errors) {
  const std::vector<ScenarioAlternative> one = {with_net("A", 1)};
  try {
    (void)opportunity_cost(one, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooFewAlternatives);
  }
  const std::vector<ScenarioAlternative> two = {with_net("A", 1), with_net("B", 2)};
  EXPECT_THROW((void)opportunity_cost(two, 2), Error);
}

TEST(OpportunityCost, InvariantUnderAddingDominatedAlternative) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> net(-1e5, 1e5);
  for (int i = 0; i < 300; ++i) {
    std::vector<ScenarioAlternative> alts = {with_net("a", net(rng)), with_net("b", net(rng)), with_net("c", net(rng))};
    const std::size_t chosen = static_cast<std::size_t>(i) % 3;
    const auto before = opportunity_cost(alts, chosen);
    double lowest = 1e300;
    for (const auto& v : before.values) lowest = std::min(lowest, v.net);
    alts.push_back(with_net("dominated", lowest - 1.0 - std::abs(net(rng))));
    EXPECT_EQ(opportunity_cost(alts, chosen).opportunity_cost_of_chosen, before.opportunity_cost_of_chosen);
  }
}

TEST(OpportunityCost, RankingIsStablePermutation) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> coarse(-3, 3);
  for (int i = 0; i < 300; ++i) {
    std::vector<ScenarioAlternative> alts;
    const int n = 2 + i % 5;
    for (int k = 0; k < n; ++k) alts.push_back(with_net(std::to_string(k), coarse(rng) * 1000.0));
    const auto r = opportunity_cost(alts, 0);
    auto sorted = r.ranking;
    std::sort(sorted.begin(), sorted.end());
    for (int k = 0; k < n; ++k) EXPECT_EQ(sorted[static_cast<std::size_t>(k)], static_cast<std::size_t>(k));
    for (std::size_t k = 1; k < r.ranking.size(); ++k) {
      const double prev = r.values[r.ranking[k - 1]].net, cur = r.values[r.ranking[k]].net;
      EXPECT_GE(prev, cur);
      if (prev == cur) {
        EXPECT_LT(r.ranking[k - 1], r.ranking[k]);
      }
    }
  }
}

TEST(BuildAlternatives, ZeroExtraBudgetCollapsesToStatusQuo) {
  auto in = default_inputs();
  in.extra_budget = {0, 0};
  const auto built = build_alternatives_from_model(in);
  ASSERT_EQ(built.size(), 3u);
  std::vector<ScenarioAlternative> alts;
  for (const auto& b : built) {
    EXPECT_EQ(b.p, in.status_quo_p);
    alts.push_back(b.alternative);
  }
  const auto r = opportunity_cost(alts, 0);
  for (const auto& row : r.net_differences)
    for (double d : row) EXPECT_EQ(d, 0.0);
}

TEST(BuildAlternatives, DefaultChainMatchesHandDerivation) {
  const auto built = build_alternatives_from_model(default_inputs());
  // efficiency = 0.01 * 22640 * 50000 / 500000 = 22.64
  EXPECT_NEAR(built[0].efficiency, 22.64, 1e-12);
  // p2 = 0.01 + 22.64 * 5e5 / 1.132e9 = 0.02; extra imprisonment 0.01 * 5e4 = 500
  EXPECT_NEAR(built[1].p, 0.02, 1e-15);
  EXPECT_NEAR(built[1].delta_imprisonment, 500.0, 1e-9);
  EXPECT_NEAR(built[1].alternative.expected_crimes_averted, 250.0, 1e-9);
  EXPECT_NEAR(evaluate_alternative(built[1].alternative).net, 250 * 22640.0 - 750000.0, 1e-6);
  // p3 = 0.01 + 22.64 * 2e6 / 1.132e9 = 0.05
  EXPECT_NEAR(built[2].p, 0.05, 1e-15);
  EXPECT_NEAR(evaluate_alternative(built[2].alternative).net, 1000 * 22640.0 - 3000000.0, 1e-6);
  EXPECT_EQ(evaluate_alternative(built[0].alternative).net, 0.0);
}

TEST(BuildAlternatives, ResponseCappedAtPMax) {
  auto in = default_inputs();
  in.extra_budget = {1e12, 1e13};
  const auto built = build_alternatives_from_model(in);
  EXPECT_EQ(built[1].p, in.p_max);
  EXPECT_EQ(built[2].p, in.p_max);
}

TEST(BuildAlternatives, NegativeElasticityRejected) {
  auto in = default_inputs();
  in.elasticities = {-1, 1};
  try {
    (void)build_alternatives_from_model(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RangeError);
  }
}

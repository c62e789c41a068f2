#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "heritage/econ_core.hpp"

using namespace heritage;

namespace {

// Oracle: invert an increasing utility by plain bisection, independent of the
// closed forms used by certainty_equivalent.
double bisect_inverse(const UtilitySpec& u, double target, double lo, double hi) {
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    (utility(u, mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double expected_utility(const UtilitySpec& u, const std::vector<LotteryOutcome>& l) {
  double eu = 0.0;
  for (const auto& o : l) eu += o.probability * utility(u, o.amount);
  return eu;
}

}  // namespace

TEST(DecideCrime, CommitsWhenDetentionImpossibleAndCrimePaysMore) {
  EXPECT_EQ(decide_crime({100, 50, 0, 0}, RiskNeutral{}), Decision::Commit);
}

TEST(DecideCrime, TieAbstains) {
  EXPECT_EQ(decide_crime({50, 50, 0, 0}, RiskNeutral{}), Decision::Abstain);
  EXPECT_EQ(decide_crime({50, 50, 0, 0}, Crra{2.0}), Decision::Abstain);
  EXPECT_EQ(decide_crime({50, 50, 0, 0}, ReferencePoint{40, 2}), Decision::Abstain);
}

TEST(DecideCrime, ExpectedGainEqualToExpectedPenaltyAbstains) {
  // 0.5*100 - 0.5*100 = 0, not > U(0) = 0
  EXPECT_EQ(decide_crime({100, 0, 100, 0.5}, RiskNeutral{}), Decision::Abstain);
}

TEST(DecideCrime, CrraRejectsNegativeIncome) {
  try {
    (void)decide_crime({-1, 10, 0, 0.1}, Crra{2.0});
    FAIL() << "expected DomainError";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainError);
  }
}

TEST(DecideCrime, RejectsInvalidProfile) {
  EXPECT_THROW((void)decide_crime({1, 1, 0, 1.5}, RiskNeutral{}), Error);
  EXPECT_THROW((void)decide_crime({1, 1, -1, 0.5}, RiskNeutral{}), Error);
}

TEST(Utility, CrraClampsZeroIncome) {
  const double u0 = utility(Crra{2.0}, 0.0);
  EXPECT_TRUE(std::isfinite(u0));
  EXPECT_DOUBLE_EQ(u0, utility(Crra{2.0}, kCrraFloor));
}

TEST(Utility, InvalidParametersRejected) {
  EXPECT_THROW(validate(UtilitySpec{Crra{1.0}}), Error);
  EXPECT_THROW(validate(UtilitySpec{Crra{0.0}}), Error);
  EXPECT_THROW(validate(UtilitySpec{ReferencePoint{0.0, 0.5}}), Error);
}

TEST(Utility, ReferencePointSlopes) {
  const UtilitySpec u = ReferencePoint{10.0, 2.0};
  EXPECT_DOUBLE_EQ(utility(u, 15.0), 5.0);
  EXPECT_DOUBLE_EQ(utility(u, 5.0), -10.0);
}

TEST(Utility, StrictlyIncreasing) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> x(0.0, 1000.0);
  const std::vector<UtilitySpec> specs = {RiskNeutral{}, Crra{0.5}, Crra{2.0}, Crra{4.0}, ReferencePoint{300, 2.25}};
  for (int i = 0; i < 2000; ++i) {
    double a = x(rng), b = x(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    for (const auto& u : specs) EXPECT_LT(utility(u, a), utility(u, b));
  }
}

TEST(NetExpectedReturn, Examples) {
  EXPECT_DOUBLE_EQ(net_expected_return({100, 100, 0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(net_expected_return({100, 30, 50, 0.2}), 0.8 * 100 - 0.2 * 50 - 30);
  EXPECT_NEAR(net_expected_return({100, 30, 50, 0.2}), 40.0, 1e-12);
  EXPECT_DOUBLE_EQ(net_expected_return({12345, 0, 10, 1.0}), -10.0);
}

TEST(Participation, Examples) {
  EXPECT_DOUBLE_EQ(participation_decompose(0.0, 5.0).cpp, 0.0);
  EXPECT_NEAR(participation_decompose(0.05, 4.0).cpp, 0.2, 1e-15);
  EXPECT_NEAR(lambda_from(0.2, 0.05), 4.0, 1e-12);
}

TEST(Participation, RangeErrors) {
  EXPECT_THROW(participation_decompose(1.1, 1.0), Error);
  EXPECT_THROW(participation_decompose(-0.1, 1.0), Error);
  EXPECT_THROW(participation_decompose(0.5, -1.0), Error);
  EXPECT_THROW(lambda_from(0.2, 0.0), Error);
}

TEST(Participation, RoundTripProperty) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> cpr(1e-6, 1.0), lam(0.0, 50.0);
  for (int i = 0; i < 1000; ++i) {
    const auto s = participation_decompose(cpr(rng), lam(rng));
    EXPECT_NEAR(lambda_from(s.cpp, s.cpr), s.lambda, 1e-12 * std::max(1.0, s.lambda));
  }
}

TEST(CertaintyEquivalent, RiskNeutralIsMean) {
  EXPECT_DOUBLE_EQ(certainty_equivalent(RiskNeutral{}, {{0.5, 0.0}, {0.5, 100.0}}), 50.0);
}

TEST(CertaintyEquivalent, CrraMatchesBisectionOracleAndSitsBelowMean) {
  const std::vector<LotteryOutcome> lottery = {{0.5, 50.0}, {0.5, 150.0}};
  const UtilitySpec u = Crra{2.0};
  const double oracle = bisect_inverse(u, expected_utility(u, lottery), 50.0, 150.0);
  const double ce = certainty_equivalent(u, lottery);
  EXPECT_NEAR(ce, oracle, 1e-9);
  EXPECT_NEAR(oracle, 75.0, 1e-9);  // harmonic mean of 50 and 150
  EXPECT_LT(ce, 100.0);
}

TEST(CertaintyEquivalent, Degenerate) {
  EXPECT_DOUBLE_EQ(certainty_equivalent(Crra{3.0}, {{1.0, 42.0}}), 42.0);
  EXPECT_DOUBLE_EQ(certainty_equivalent(ReferencePoint{10, 2}, {{1.0, 42.0}}), 42.0);
}

TEST(CertaintyEquivalent, ReferencePointMatchesOracle) {
  const std::vector<LotteryOutcome> lottery = {{0.3, 0.0}, {0.7, 100.0}};
  const UtilitySpec u = ReferencePoint{60.0, 2.0};
  const double oracle = bisect_inverse(u, expected_utility(u, lottery), 0.0, 100.0);
  EXPECT_NEAR(certainty_equivalent(u, lottery), oracle, 1e-9);
}

TEST(CertaintyEquivalent, RejectsBadProbabilities) {
  EXPECT_THROW((void)certainty_equivalent(RiskNeutral{}, {{0.5, 1.0}, {0.4, 2.0}}), Error);
  EXPECT_THROW((void)certainty_equivalent(Crra{2.0}, {{0.5, -1.0}, {0.5, 2.0}}), Error);
}

TEST(CertaintyEquivalent, RiskAversionProperty) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> amount(1.0, 500.0), prob(0.05, 0.95), rho(0.2, 5.0);
  for (int i = 0; i < 500; ++i) {
    const double a = amount(rng), b = amount(rng), q = prob(rng);
    if (std::abs(a - b) < 1e-3) continue;
    const std::vector<LotteryOutcome> l = {{q, a}, {1.0 - q, b}};
    const double mean = q * a + (1.0 - q) * b;
    double r = rho(rng);
    if (std::abs(r - 1.0) < 1e-6) r = 1.5;
    EXPECT_LT(certainty_equivalent(Crra{r}, l), mean);
    EXPECT_NEAR(certainty_equivalent(RiskNeutral{}, l), mean, 1e-9 * mean);
  }
}

TEST(DecideCrime, MonotonicityProperty) {
  // Increasing p helps deterrence only while U(wc) + U(s) >= 0, which holds
  // for non-negative incomes under these utilities with incomes >= 1.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> money(1.0, 200.0), prob(0.0, 1.0), bump(0.0, 50.0), pbump(0.0, 0.3);
  const std::vector<UtilitySpec> specs = {RiskNeutral{}, Crra{0.5}, Crra{2.0}, ReferencePoint{0.0, 2.0}};
  for (int i = 0; i < 2000; ++i) {
    const OffenderProfile base{money(rng), money(rng), money(rng), prob(rng)};
    for (const auto& u : specs) {
      const auto d = decide_crime(base, u);
      OffenderProfile more_gain = base;
      more_gain.wc += bump(rng);
      if (d == Decision::Commit) {
        EXPECT_EQ(decide_crime(more_gain, u), Decision::Commit);
      }

      OffenderProfile more_p = base, more_s = base, more_w = base;
      more_p.p = std::min(1.0, base.p + pbump(rng));
      more_s.s += bump(rng);
      more_w.w += bump(rng);
      if (d == Decision::Abstain) {
        EXPECT_EQ(decide_crime(more_p, u), Decision::Abstain);
        EXPECT_EQ(decide_crime(more_s, u), Decision::Abstain);
        EXPECT_EQ(decide_crime(more_w, u), Decision::Abstain);
      }
    }
  }
}

TEST(DecideCrime, RiskNeutralReducesToNetReturnSign) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> money(-100.0, 300.0), pen(0.0, 300.0), prob(0.0, 1.0);
  for (int i = 0; i < 5000; ++i) {
    const OffenderProfile p{money(rng), money(rng), pen(rng), prob(rng)};
    EXPECT_EQ(decide_crime(p, RiskNeutral{}) == Decision::Commit, net_expected_return(p) > 0.0);
  }
}

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "heritage/valuation.hpp"

using namespace heritage;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected heritage::Error";
  return ErrorCode::SolverFailure;
}

// Brute-force willingness-to-pay aggregation straight from the raw rows:
// strip protests, repeatedly remove the current maximum, average the rest.
double brute_force_component(const std::vector<SurveyResponse>& rows, NonUseKind kind, double population, double trim) {
  std::vector<double> kept;
  for (const auto& r : rows)
    if (r.component == kind && !r.protest) kept.push_back(r.wtp);
  if (kept.empty()) return 0.0;
  std::size_t drop = 0;
  while (drop + 1 < kept.size() && static_cast<double>(drop) < trim * static_cast<double>(kept.size()) - 1e-9) ++drop;
  for (std::size_t i = 0; i < drop; ++i) kept.erase(std::max_element(kept.begin(), kept.end()));
  double sum = 0.0;
  for (double x : kept) sum += x;
  return sum / static_cast<double>(kept.size()) * population;
}

}  // namespace

TEST(DirectValue, NormativeCapApplies) {
  DirectValueInput in;
  in.comparables = {{ComparableSource::Auction, 10000}};
  EXPECT_EQ(direct_value(in).value, 2500.0);
}

TEST(DirectValue, NormativeWithoutEstimateWarns) {
  const auto v = direct_value(DirectValueInput{});
  EXPECT_EQ(v.value, 2500.0);
  ASSERT_EQ(v.warnings.size(), 1u);
}

TEST(DirectValue, MarketPassThroughAndMax) {
  DirectValueInput in;
  in.approach = DirectApproach::Market;
  in.comparables = {{ComparableSource::Auction, 1e6}};
  EXPECT_EQ(direct_value(in).value, 1e6);
  in.comparables = {{ComparableSource::Auction, 5e6}, {ComparableSource::Insurance, 8e6}, {ComparableSource::TicketRevenue, 1e5}};
  EXPECT_EQ(direct_value(in).value, std::max({5e6, 8e6, 1e5}));
  in.combine = CombineRule::Median;
  EXPECT_EQ(direct_value(in).value, 5e6);
  in.combine = CombineRule::Mean;
  EXPECT_DOUBLE_EQ(direct_value(in).value, (5e6 + 8e6 + 1e5) / 3);
}

TEST(DirectValue, MarketNeedsComparables) {
  DirectValueInput in;
  in.approach = DirectApproach::Market;
  EXPECT_EQ(code_of([&] { (void)direct_value(in); }), ErrorCode::NoComparables);
}

TEST(DirectValue, NormativeNeverExceedsCap) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> amt(0.0, 1e7), cap(0.0, 1e4);
  for (int i = 0; i < 1000; ++i) {
    DirectValueInput in;
    in.normative_cap = cap(rng);
    in.combine = static_cast<CombineRule>(i % 3);
    for (int k = 0; k < i % 4; ++k) in.comparables.push_back({ComparableSource::BlackMarket, amt(rng)});
    EXPECT_LE(direct_value(in).value, in.normative_cap);
  }
}

TEST(AdditionalValue, Examples) {
  SecondaryActivityLedger a{"a", {{SecondaryStream::Restaurants, 100}, {SecondaryStream::Hotels, 200}}};
  SecondaryActivityLedger b{"b", {{SecondaryStream::Restaurants, 180}, {SecondaryStream::Hotels, 260}}};
  EXPECT_EQ(additional_monetary_value(a, a), 0.0);
  EXPECT_EQ(additional_monetary_value(a, b), (180 - 100) + (260 - 200));
  SecondaryActivityLedger with_ads = a;
  with_ads.streams[SecondaryStream::Advertising] = 50;
  EXPECT_EQ(additional_monetary_value(with_ads, a), -50.0);
}

TEST(AdditionalValue, Antisymmetric) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> amt(0.0, 1000.0);
  std::bernoulli_distribution present(0.6);
  for (int i = 0; i < 500; ++i) {
    SecondaryActivityLedger a, b;
    for (int s = 0; s < 5; ++s) {
      if (present(rng)) a.streams[static_cast<SecondaryStream>(s)] = amt(rng);
      if (present(rng)) b.streams[static_cast<SecondaryStream>(s)] = amt(rng);
    }
    EXPECT_EQ(additional_monetary_value(a, b), -additional_monetary_value(b, a));
  }
}

TEST(NonUse, ExcludedKindsAreRejected) {
  for (const char* name : {"Aesthetic", "Spiritual", "Social", "Symbolic", "aesthetic"}) {
    try {
      (void)parse_non_use_kind(name);
      FAIL() << name;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::UnknownComponent);
      EXPECT_NE(std::string(e.what()).find("excluded"), std::string::npos);
    }
  }
  EXPECT_EQ(parse_non_use_kind("existence"), NonUseKind::Existence);
  EXPECT_EQ(code_of([] { (void)parse_non_use_kind("Heritage"); }), ErrorCode::UnknownComponent);
}

TEST(NonUse, ScientificSubvalueBelongsToEducationalOnly) {
  const NonUseComponent edu(NonUseKind::Educational, 100, 40);
  EXPECT_EQ(edu.amount(), 100.0);
  EXPECT_EQ(*edu.scientific_subvalue(), 40.0);
  EXPECT_THROW(NonUseComponent(NonUseKind::Educational, 100, 140), Error);
  EXPECT_THROW(NonUseComponent(NonUseKind::Existence, 100, 10), Error);
  EXPECT_THROW(NonUseComponent(NonUseKind::Option, -1), Error);
  // Scientific value is part of the educational amount, never added again.
  const auto b = tev_total(0, 0, {edu});
  EXPECT_EQ(b.tev, 100.0);
}

TEST(AggregateWtp, AllProtestsGiveZeroWithWarnings) {
  const std::vector<SurveyResponse> rows = {{"1", NonUseKind::Existence, 10, true}, {"2", NonUseKind::Option, 20, true}};
  const auto agg = aggregate_wtp(rows, 1000, 0.0);
  for (auto k : kNonUseKinds) EXPECT_EQ(agg.values.at(k), 0.0);
  EXPECT_EQ(agg.warnings.size(), kNonUseKinds.size());
}

TEST(AggregateWtp, MeanTimesPopulation) {
  const std::vector<SurveyResponse> rows = {{"1", NonUseKind::Existence, 10, false}, {"2", NonUseKind::Existence, 20, false}};
  EXPECT_EQ(aggregate_wtp(rows, 1000, 0.0).values.at(NonUseKind::Existence), 15000.0);
}

TEST(AggregateWtp, TrimDropsUpperTail) {
  const std::vector<SurveyResponse> rows = {
      {"1", NonUseKind::Existence, 10, false}, {"2", NonUseKind::Existence, 20, false}, {"3", NonUseKind::Existence, 10000, false}};
  EXPECT_EQ(aggregate_wtp(rows, 1000, 0.25).values.at(NonUseKind::Existence), 15000.0);
}

TEST(AggregateWtp, RejectsBadArguments) {
  const std::vector<SurveyResponse> neg = {{"1", NonUseKind::Existence, -1, false}};
  EXPECT_EQ(code_of([&] { (void)aggregate_wtp(neg, 10, 0); }), ErrorCode::InvariantError);
  EXPECT_EQ(code_of([] { (void)aggregate_wtp({}, 0, 0); }), ErrorCode::RangeError);
  EXPECT_EQ(code_of([] { (void)aggregate_wtp({}, 10, 0.3); }), ErrorCode::RangeError);
}

TEST(Tev, Examples) {
  EXPECT_EQ(tev_total(0, 0, {}).tev, 0.0);
  const auto b = tev_total(2500, 140, {NonUseComponent(NonUseKind::Existence, 15000), NonUseComponent(NonUseKind::Donation, 5000)});
  EXPECT_EQ(b.tev, 2500 + 140 + 15000 + 5000);
  EXPECT_EQ(b.tev, 22640.0);
  EXPECT_EQ(code_of([] {
              (void)tev_total(0, 0, {NonUseComponent(NonUseKind::Existence, 1), NonUseComponent(NonUseKind::Existence, 2)});
            }),
            ErrorCode::DuplicateComponent);
}

TEST(Tev, RandomizedProperties) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> amt(0.0, 1e5), wtp(0.0, 500.0), trim(0.0, 0.25);
  std::uniform_int_distribution<int> nrows(0, 50), kind(0, 4), ncomp(0, 5);
  std::bernoulli_distribution coin(0.5), protest(0.15);
  for (int i = 0; i < 1000; ++i) {
    // Additivity and duplicate rejection.
    std::vector<NonUseComponent> comps;
    std::vector<int> kinds = {0, 1, 2, 3, 4};
    std::shuffle(kinds.begin(), kinds.end(), rng);
    const int n = ncomp(rng);
    for (int k = 0; k < n; ++k) comps.emplace_back(static_cast<NonUseKind>(kinds[k]), amt(rng));
    const double direct = amt(rng), additional = amt(rng) - 5e4;
    const auto b = tev_total(direct, additional, comps);
    double sum = 0.0;
    for (const auto& c : comps) sum += c.amount();
    EXPECT_EQ(b.tev, direct + additional + sum);
    if (!comps.empty()) {
      auto dup = comps;
      dup.push_back(comps[static_cast<std::size_t>(i) % comps.size()]);
      std::shuffle(dup.begin(), dup.end(), rng);
      EXPECT_EQ(code_of([&] { (void)tev_total(direct, additional, dup); }), ErrorCode::DuplicateComponent);
    }

    // Normative cap.
    DirectValueInput in;
    in.normative_cap = amt(rng);
    if (coin(rng)) in.comparables.push_back({ComparableSource::Auction, amt(rng) * 10});
    EXPECT_LE(direct_value(in).value, in.normative_cap);

    // Aggregation against brute force.
    std::vector<SurveyResponse> rows;
    const int m = nrows(rng);
    for (int r = 0; r < m; ++r) rows.push_back({std::to_string(r), static_cast<NonUseKind>(kind(rng)), wtp(rng), protest(rng)});
    const double t = coin(rng) ? trim(rng) : 0.25 * (i % 5) / 4.0;
    const double pop = 1.0 + amt(rng);
    const auto agg = aggregate_wtp(rows, pop, t);
    for (auto k : kNonUseKinds) EXPECT_NEAR(agg.values.at(k), brute_force_component(rows, k, pop, t), 1e-9 * (1.0 + agg.values.at(k)));
  }
}

TEST(Tourism, Examples) {
  const double v = tourism_baseline(82e9, 0.136, 0.12);
  EXPECT_NEAR(v, 82e9 * 0.136 * 0.12, 1.0);
  EXPECT_GT(v, 1e9);
  EXPECT_EQ(tourism_baseline(5e9, 0.0, 0.4), 0.0);
  EXPECT_EQ(tourism_baseline(5e9, 1.0, 1.0), 5e9);
  EXPECT_EQ(code_of([] { (void)tourism_baseline(1, 1.2, 0.1); }), ErrorCode::RangeError);
}

#pragma once

// Total economic value of a heritage object: direct use value, additional
// monetary value from secondary activity around it, and the non-use value
// aggregated from contingent-valuation responses.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "heritage/error.hpp"

namespace heritage {

// ---------------------------------------------------------------------------
// Direct value
// ---------------------------------------------------------------------------

enum class DirectApproach { Normative, Market };
enum class ComparableSource { Auction, Insurance, BlackMarket, TicketRevenue };
enum class CombineRule { Max, Mean, Median };

struct Comparable {
  ComparableSource source = ComparableSource::Auction;
  double amount = 0.0;
};

struct DirectValueInput {
  DirectApproach approach = DirectApproach::Normative;
  double normative_cap = 2500.0;
  std::vector<Comparable> comparables;
  CombineRule combine = CombineRule::Max;
};

/// A computed amount plus any warnings raised while computing it.
struct Valued {
  double value = 0.0;
  std::vector<std::string> warnings;
};

inline double combine(std::span<const Comparable> comparables, CombineRule rule) {
  std::vector<double> xs;
  xs.reserve(comparables.size());
  for (const auto& c : comparables) xs.push_back(c.amount);
  std::sort(xs.begin(), xs.end());
  switch (rule) {
    case CombineRule::Max:
      return xs.back();
    case CombineRule::Mean: {
      double sum = 0.0;
      for (double x : xs) sum += x;
      return sum / static_cast<double>(xs.size());
    }
    case CombineRule::Median: {
      const std::size_t n = xs.size();
      return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
    }
  }
  return xs.back();
}

inline Valued direct_value(const DirectValueInput& input) {
  if (!(input.normative_cap >= 0.0)) fail(ErrorCode::RangeError, "normative cap must be >= 0");
  for (const auto& c : input.comparables)
    if (!(c.amount >= 0.0) || !std::isfinite(c.amount)) fail(ErrorCode::RangeError, "comparable amounts must be finite and >= 0");

  if (input.approach == DirectApproach::Market) {
    if (input.comparables.empty()) fail(ErrorCode::NoComparables, "market approach needs at least one comparable");
    return {combine(input.comparables, input.combine), {}};
  }
  if (input.comparables.empty())
    return {input.normative_cap, {"no estimate available; normative cap used as an upper bound"}};
  return {std::min(combine(input.comparables, input.combine), input.normative_cap), {}};
}

// ---------------------------------------------------------------------------
// Additional monetary value
// ---------------------------------------------------------------------------

enum class SecondaryStream { Restaurants, SouvenirShops, Hotels, Transport, Advertising };

struct SecondaryActivityLedger {
  std::string period_label;
  std::map<SecondaryStream, double> streams;
};

/// Sum over streams of (during - before); streams missing on either side
/// count as zero. May be negative.
inline double additional_monetary_value(const SecondaryActivityLedger& before, const SecondaryActivityLedger& during) {
  std::map<SecondaryStream, double> delta;
  for (const auto& [k, v] : before.streams) {
    if (!(v >= 0.0)) fail(ErrorCode::RangeError, "ledger amounts must be >= 0");
    delta[k] -= v;
  }
  for (const auto& [k, v] : during.streams) {
    if (!(v >= 0.0)) fail(ErrorCode::RangeError, "ledger amounts must be >= 0");
    delta[k] += v;
  }
  double total = 0.0;
  for (const auto& [k, v] : delta) total += v;
  return total;
}

// ---------------------------------------------------------------------------
// Non-use value
// ---------------------------------------------------------------------------

/// The only admissible non-use kinds. Aesthetic, spiritual, social and
/// symbolic values are not part of indirect value and have no enumerator.
enum class NonUseKind { Existence, Option, Educational, Prestige, Donation };

inline constexpr std::array<NonUseKind, 5> kNonUseKinds = {NonUseKind::Existence, NonUseKind::Option,
                                                           NonUseKind::Educational, NonUseKind::Prestige,
                                                           NonUseKind::Donation};

inline constexpr std::string_view to_string(NonUseKind kind) {
  switch (kind) {
    case NonUseKind::Existence: return "Existence";
    case NonUseKind::Option: return "Option";
    case NonUseKind::Educational: return "Educational";
    case NonUseKind::Prestige: return "Prestige";
    case NonUseKind::Donation: return "Donation";
  }
  return "";
}

inline constexpr std::array<std::string_view, 4> kExcludedValueKinds = {"Aesthetic", "Spiritual", "Social", "Symbolic"};

inline std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

inline NonUseKind parse_non_use_kind(std::string_view name) {
  const std::string key = lowercase(name);
  for (auto kind : kNonUseKinds)
    if (lowercase(to_string(kind)) == key) return kind;
  for (auto excluded : kExcludedValueKinds)
    if (lowercase(excluded) == key)
      fail(ErrorCode::UnknownComponent,
           std::string(excluded) +
               " value is excluded from indirect value (aesthetic, spiritual, social and symbolic values are not "
               "non-use components); legal kinds: Existence, Option, Educational, Prestige, Donation");
  fail(ErrorCode::UnknownComponent, "unknown non-use component '" + std::string(name) +
                                        "'; legal kinds: Existence, Option, Educational, Prestige, Donation");
}

class NonUseComponent {
 public:
  NonUseComponent(NonUseKind kind, double amount, std::optional<double> scientific_subvalue = std::nullopt)
      : kind_(kind), amount_(amount), scientific_(scientific_subvalue) {
    if (!(amount >= 0.0) || !std::isfinite(amount)) fail(ErrorCode::RangeError, "non-use amount must be finite and >= 0");
    if (scientific_) {
      if (kind != NonUseKind::Educational)
        fail(ErrorCode::InvariantError, "scientific sub-value is only defined for the educational component");
      if (!(*scientific_ >= 0.0 && *scientific_ <= amount))
        fail(ErrorCode::InvariantError, "scientific sub-value must lie in [0, educational amount]");
    }
  }

  NonUseKind kind() const { return kind_; }
  double amount() const { return amount_; }
  /// Part of the educational amount attributed to scientific value; already
  /// included in amount().
  std::optional<double> scientific_subvalue() const { return scientific_; }

 private:
  NonUseKind kind_;
  double amount_;
  std::optional<double> scientific_;
};

struct SurveyResponse {
  std::string respondent_id;
  NonUseKind component = NonUseKind::Existence;
  double wtp = 0.0;
  bool protest = false;
};

struct WtpAggregate {
  std::map<NonUseKind, double> values;
  std::vector<std::string> warnings;
};

/// Number of upper-tail responses dropped out of n at trim fraction t:
/// ceil(t n), never all of them.
inline std::size_t trimmed_count(std::size_t n, double trim_fraction) {
  if (n == 0) return 0;
  const auto k = static_cast<std::size_t>(std::ceil(trim_fraction * static_cast<double>(n) - 1e-9));
  return std::min(k, n - 1);
}

/// Per kind: exclude protest bids, drop the top trim_fraction of the remaining
/// bids, then value = mean(remaining) x population.
inline WtpAggregate aggregate_wtp(std::span<const SurveyResponse> responses, double population, double trim_fraction) {
  if (!(population > 0.0) || !std::isfinite(population)) fail(ErrorCode::RangeError, "population must be > 0");
  if (!(trim_fraction >= 0.0 && trim_fraction <= 0.25)) fail(ErrorCode::RangeError, "trim fraction must lie in [0, 0.25]");

  std::map<NonUseKind, std::vector<double>> bids;
  for (const auto& r : responses) {
    if (!(r.wtp >= 0.0) || !std::isfinite(r.wtp))
      fail(ErrorCode::InvariantError, "negative willingness to pay from respondent " + r.respondent_id);
    if (!r.protest) bids[r.component].push_back(r.wtp);
  }

  WtpAggregate out;
  for (auto kind : kNonUseKinds) {
    auto& xs = bids[kind];
    if (xs.empty()) {
      out.values[kind] = 0.0;
      out.warnings.push_back(std::string(to_string(kind)) + ": no valid responses");
      continue;
    }
    std::sort(xs.begin(), xs.end());
    xs.resize(xs.size() - trimmed_count(xs.size(), trim_fraction));
    double sum = 0.0;
    for (double x : xs) sum += x;
    out.values[kind] = sum / static_cast<double>(xs.size()) * population;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Total economic value
// ---------------------------------------------------------------------------

struct TevBreakdown {
  double direct = 0.0;
  double additional = 0.0;
  std::vector<NonUseComponent> indirect_components;
  double tev = 0.0;

  double indirect() const {
    double sum = 0.0;
    for (const auto& c : indirect_components) sum += c.amount();
    return sum;
  }
};

inline TevBreakdown tev_total(double direct, double additional, std::span<const NonUseComponent> components) {
  if (!std::isfinite(direct) || !std::isfinite(additional)) fail(ErrorCode::RangeError, "values must be finite");
  std::array<bool, kNonUseKinds.size()> seen{};
  for (const auto& c : components) {
    auto& flag = seen[static_cast<std::size_t>(c.kind())];
    if (flag) fail(ErrorCode::DuplicateComponent, "non-use component " + std::string(to_string(c.kind())) + " appears twice");
    flag = true;
  }
  TevBreakdown out;
  out.direct = direct;
  out.additional = additional;
  out.indirect_components.assign(components.begin(), components.end());
  out.tev = direct + additional + out.indirect();
  return out;
}

inline TevBreakdown tev_total(double direct, double additional, std::initializer_list<NonUseComponent> components) {
  return tev_total(direct, additional, std::span<const NonUseComponent>(components.begin(), components.size()));
}

/// Revenue of cultural tourism: gdp x tourism share x cultural share.
inline double tourism_baseline(double gdp, double tourism_share, double cultural_share_of_tourism) {
  if (!(tourism_share >= 0.0 && tourism_share <= 1.0) || !(cultural_share_of_tourism >= 0.0 && cultural_share_of_tourism <= 1.0))
    fail(ErrorCode::RangeError, "shares must lie in [0,1]");
  if (!(gdp >= 0.0) || !std::isfinite(gdp)) fail(ErrorCode::RangeError, "gdp must be finite and >= 0");
  return gdp * tourism_share * cultural_share_of_tourism;
}

}  // namespace heritage

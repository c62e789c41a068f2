#pragma once

// Detection-risk analytics over the registered -> submitted -> convicted ->
// imprisoned pipeline for heritage crime categories.

#include <array>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "heritage/error.hpp"

namespace heritage {

enum class CrimeCategory {
  Total,
  Art208_TreasureSearch,
  Art277a_TreasureHunting,
  Art278_Concealment,
  Art278a_ExportTrade,
  Art278b_DamageDestruction,
};

inline constexpr std::array<CrimeCategory, 6> kCrimeCategories = {
    CrimeCategory::Total,
    CrimeCategory::Art208_TreasureSearch,
    CrimeCategory::Art277a_TreasureHunting,
    CrimeCategory::Art278_Concealment,
    CrimeCategory::Art278a_ExportTrade,
    CrimeCategory::Art278b_DamageDestruction,
};

/// Short label used in CSV files and reports.
inline constexpr std::string_view to_string(CrimeCategory c) {
  switch (c) {
    case CrimeCategory::Total: return "Total";
    case CrimeCategory::Art208_TreasureSearch: return "Art208";
    case CrimeCategory::Art277a_TreasureHunting: return "Art277a";
    case CrimeCategory::Art278_Concealment: return "Art278";
    case CrimeCategory::Art278a_ExportTrade: return "Art278a";
    case CrimeCategory::Art278b_DamageDestruction: return "Art278b";
  }
  return "";
}

inline CrimeCategory parse_crime_category(std::string_view name) {
  for (auto c : kCrimeCategories)
    if (to_string(c) == name) return c;
  fail(ErrorCode::ParseError, "unknown crime category '" + std::string(name) +
                                  "' (expected Total, Art208, Art277a, Art278, Art278a or Art278b)");
}

struct FunnelRecord {
  CrimeCategory category = CrimeCategory::Total;
  int year = 0;
  long registered = 0;
  long submitted_to_court = 0;
  long convicted_persons = 0;  // persons; may exceed submitted cases
  long imprisoned_effective = 0;
  bool synthetic = false;
};

/// Empty string when valid, otherwise the violated invariant.
inline std::string check_invariants(const FunnelRecord& r) {
  if (r.registered < 0 || r.submitted_to_court < 0 || r.convicted_persons < 0 || r.imprisoned_effective < 0)
    return "counts must be >= 0";
  if (r.submitted_to_court > r.registered) return "submitted_to_court exceeds registered";
  if (r.imprisoned_effective > r.convicted_persons) return "imprisoned_effective exceeds convicted_persons";
  return {};
}

struct DetectionRubric {
  double p_if_imprisonment = 0.01;
  double p_if_conviction_only = 0.001;
  double p_if_inactive = 0.0;
  double imprisonment_threshold = 1.0;  // mean effective imprisonments per year
  double conviction_threshold = 1.0;    // mean convicted persons per year

  bool operator==(const DetectionRubric&) const = default;
};

inline void validate(const DetectionRubric& r) {
  if (!(0.0 <= r.p_if_inactive && r.p_if_inactive <= r.p_if_conviction_only &&
        r.p_if_conviction_only <= r.p_if_imprisonment && r.p_if_imprisonment <= 1.0))
    fail(ErrorCode::InvariantError, "rubric requires 0 <= p_if_inactive <= p_if_conviction_only <= p_if_imprisonment <= 1");
  if (!(r.imprisonment_threshold > 0.0) || !(r.conviction_threshold > 0.0))
    fail(ErrorCode::InvariantError, "rubric thresholds must be > 0");
}

struct StageRates {
  double submission_rate = 0.0;
  double convictions_per_year = 0.0;
  double imprisonments_per_year = 0.0;
  int years = 0;
};

namespace detail {

inline std::vector<FunnelRecord> select(std::span<const FunnelRecord> records, CrimeCategory category) {
  std::vector<FunnelRecord> out;
  for (const auto& r : records)
    if (r.category == category) out.push_back(r);
  if (out.empty()) fail(ErrorCode::EmptyCategory, "no records for category " + std::string(to_string(category)));
  return out;
}

struct Means {
  double convictions = 0.0;
  double imprisonments = 0.0;
};

inline Means yearly_means(const std::vector<FunnelRecord>& rows) {
  double conv = 0.0;
  double imp = 0.0;
  for (const auto& r : rows) {
    conv += static_cast<double>(r.convicted_persons);
    imp += static_cast<double>(r.imprisoned_effective);
  }
  const auto n = static_cast<double>(rows.size());
  return {conv / n, imp / n};
}

}  // namespace detail

inline StageRates stage_rates(std::span<const FunnelRecord> records, CrimeCategory category) {
  const auto rows = detail::select(records, category);
  long registered = 0;
  long submitted = 0;
  for (const auto& r : rows) {
    registered += r.registered;
    submitted += r.submitted_to_court;
  }
  if (registered <= 0)
    fail(ErrorCode::EmptyCategory, "category " + std::string(to_string(category)) + " has no registered crimes");
  const auto means = detail::yearly_means(rows);
  return {static_cast<double>(submitted) / static_cast<double>(registered), means.convictions, means.imprisonments,
          static_cast<int>(rows.size())};
}

inline double classify(const detail::Means& means, const DetectionRubric& rubric) {
  if (means.imprisonments >= rubric.imprisonment_threshold) return rubric.p_if_imprisonment;
  if (means.convictions >= rubric.conviction_threshold) return rubric.p_if_conviction_only;
  return rubric.p_if_inactive;
}

/// Imprisonment activity dominates: a category with effective imprisonments
/// at threshold gets p_if_imprisonment, otherwise convictions at threshold
/// give p_if_conviction_only, otherwise p_if_inactive.
inline double detection_risk(std::span<const FunnelRecord> records, CrimeCategory category, const DetectionRubric& rubric = {}) {
  validate(rubric);
  return classify(detail::yearly_means(detail::select(records, category)), rubric);
}

/// Share of committed crimes that get registered.
inline double registration_coverage(double registered_per_year, double active_offenders, double lambda) {
  if (!(active_offenders > 0.0) || !(lambda > 0.0))
    fail(ErrorCode::DomainError, "coverage needs active_offenders > 0 and lambda > 0");
  if (!(registered_per_year >= 0.0)) fail(ErrorCode::RangeError, "registered count must be >= 0");
  return registered_per_year / (active_offenders * lambda);
}

struct CalibrationResult {
  DetectionRubric rubric;
  int mismatches = 0;
  std::vector<std::string> mismatched;  // categories whose target is missed
};

/// Exhaustive grid search for the rubric that reproduces the most targets.
/// Ties go to the candidate closest to the default rubric (fewest differing
/// fields), then to enumeration order.
inline CalibrationResult calibrate_rubric(std::span<const FunnelRecord> records,
                                          const std::map<CrimeCategory, double>& targets) {
  if (targets.size() < 2) fail(ErrorCode::DomainError, "calibration needs targets for at least two categories");
  constexpr std::array<double, 4> p_levels = {0.0, 0.001, 0.01, 0.05};
  constexpr std::array<double, 3> thresholds = {1.0, 2.0, 5.0};

  std::map<CrimeCategory, detail::Means> means;
  for (const auto& [c, _] : targets) means[c] = detail::yearly_means(detail::select(records, c));

  const DetectionRubric reference{};
  auto distance = [&](const DetectionRubric& r) {
    return int(r.p_if_imprisonment != reference.p_if_imprisonment) + int(r.p_if_conviction_only != reference.p_if_conviction_only) +
           int(r.p_if_inactive != reference.p_if_inactive) + int(r.imprisonment_threshold != reference.imprisonment_threshold) +
           int(r.conviction_threshold != reference.conviction_threshold);
  };

  CalibrationResult best;
  int best_distance = 0;
  bool have = false;
  for (double pi : p_levels)
    for (double pc : p_levels)
      for (double p0 : p_levels) {
        if (!(p0 <= pc && pc <= pi)) continue;
        for (double ti : thresholds)
          for (double tc : thresholds) {
            const DetectionRubric candidate{pi, pc, p0, ti, tc};
            int miss = 0;
            for (const auto& [c, target] : targets)
              if (classify(means[c], candidate) != target) ++miss;
            const int dist = distance(candidate);
            if (!have || miss < best.mismatches || (miss == best.mismatches && dist < best_distance)) {
              best.rubric = candidate;
              best.mismatches = miss;
              best_distance = dist;
              have = true;
            }
          }
      }
  for (const auto& [c, target] : targets)
    if (classify(means[c], best.rubric) != target) best.mismatched.emplace_back(to_string(c));
  return best;
}

}  // namespace heritage

#pragma once

// Net benefits of counteraction alternatives and the opportunity cost of
// choosing one of them.

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heritage/crime_market.hpp"
#include "heritage/error.hpp"

namespace heritage {

struct ScenarioAlternative {
  std::string name;
  double enforcement_budget = 0.0;
  double redirected_resource_cost = 0.0;  // capacity pulled from other crime types
  double expected_crimes_averted = 0.0;
  double tev_per_averted_crime = 0.0;
  double tourism_uplift = 0.0;
};

inline void validate(const ScenarioAlternative& a) {
  auto nonneg = [&](double v, const char* what) {
    if (!(v >= 0.0) || !std::isfinite(v)) fail(ErrorCode::RangeError, "alternative '" + a.name + "': " + what + " must be finite and >= 0");
  };
  nonneg(a.enforcement_budget, "enforcement_budget");
  nonneg(a.redirected_resource_cost, "redirected_resource_cost");
  nonneg(a.expected_crimes_averted, "expected_crimes_averted");
  nonneg(a.tev_per_averted_crime, "tev_per_averted_crime");
  if (!std::isfinite(a.tourism_uplift)) fail(ErrorCode::RangeError, "alternative '" + a.name + "': tourism_uplift must be finite");
}

struct AlternativeValue {
  double benefits = 0.0;
  double costs = 0.0;
  double net = 0.0;
};

inline AlternativeValue evaluate_alternative(const ScenarioAlternative& alt) {
  validate(alt);
  AlternativeValue v;
  v.benefits = alt.expected_crimes_averted * alt.tev_per_averted_crime + alt.tourism_uplift;
  v.costs = alt.enforcement_budget + alt.redirected_resource_cost;
  v.net = v.benefits - v.costs;
  return v;
}

struct NetBenefitReport {
  std::vector<AlternativeValue> values;
  std::vector<std::size_t> ranking;  // indices by descending net, ties in input order
  std::size_t chosen = 0;
  double opportunity_cost_of_chosen = 0.0;  // best net among rejected alternatives
  std::size_t best_rejected = 0;
  bool chosen_dominated = false;  // some rejected alternative has a higher net
  std::vector<std::vector<double>> net_differences;  // [i][j] = net_i - net_j
};

inline NetBenefitReport opportunity_cost(std::span<const ScenarioAlternative> alternatives, std::size_t chosen_index) {
  if (alternatives.size() < 2) fail(ErrorCode::TooFewAlternatives, "opportunity cost needs at least two alternatives");
  if (chosen_index >= alternatives.size()) fail(ErrorCode::RangeError, "chosen alternative index out of range");

  NetBenefitReport r;
  r.chosen = chosen_index;
  for (const auto& a : alternatives) r.values.push_back(evaluate_alternative(a));

  r.ranking.resize(alternatives.size());
  std::iota(r.ranking.begin(), r.ranking.end(), std::size_t{0});
  std::stable_sort(r.ranking.begin(), r.ranking.end(), [&](std::size_t a, std::size_t b) { return r.values[a].net > r.values[b].net; });

  bool have = false;
  for (std::size_t i = 0; i < alternatives.size(); ++i) {
    if (i == chosen_index) continue;
    if (!have || r.values[i].net > r.opportunity_cost_of_chosen) {
      r.opportunity_cost_of_chosen = r.values[i].net;
      r.best_rejected = i;
      have = true;
    }
  }
  r.chosen_dominated = r.opportunity_cost_of_chosen > r.values[chosen_index].net;

  r.net_differences.assign(alternatives.size(), std::vector<double>(alternatives.size(), 0.0));
  for (std::size_t i = 0; i < alternatives.size(); ++i)
    for (std::size_t j = 0; j < alternatives.size(); ++j) r.net_differences[i][j] = r.values[i].net - r.values[j].net;
  return r;
}

/// Inputs for deriving the three counteraction alternatives from model output.
struct AlternativeBuildInputs {
  double status_quo_p = 0.0;            // detection risk under current counteraction
  double baseline_budget = 0.0;         // current enforcement spend
  double tev_per_crime = 0.0;           // damage per crime
  double crimes_per_year = 0.0;         // committed crimes per year at status quo
  double tourism_baseline = 0.0;        // annual cultural tourism revenue
  Elasticities elasticities{};
  double p_max = 1.0;
  /// Unset: calibrated so that baseline_budget alone yields status_quo_p.
  std::optional<double> efficiency;
  std::array<double, 2> extra_budget{};      // alternatives 2 and 3
  std::array<double, 2> redirect_share{};    // redirected capacity as a share of extra budget
  std::array<double, 2> tourism_uplift_share{};  // uplift as a share of the tourism baseline
};

struct BuiltAlternative {
  ScenarioAlternative alternative;
  double p = 0.0;
  double delta_imprisonment = 0.0;
  double efficiency = 0.0;
};

inline double tev_at_risk(const AlternativeBuildInputs& in) { return in.tev_per_crime * std::max(in.crimes_per_year, 1.0); }

inline double effective_efficiency(const AlternativeBuildInputs& in) {
  if (in.efficiency) return *in.efficiency;
  return calibrate_efficiency(in.status_quo_p, in.baseline_budget, tev_at_risk(in));
}

/// Alternative 1 keeps the status quo at no incremental cost. Alternatives 2
/// and 3 buy extra detention probability on top of the status-quo level; the
/// additional crimes incapacitated become crimes averted via the elasticities.
inline std::vector<BuiltAlternative> build_alternatives_from_model(const AlternativeBuildInputs& in) {
  if (!(in.status_quo_p >= 0.0 && in.status_quo_p <= in.p_max && in.p_max <= 1.0))
    fail(ErrorCode::RangeError, "status-quo p must lie in [0, p_max]");
  if (!(in.tev_per_crime > 0.0)) fail(ErrorCode::DomainError, "tev per crime must be > 0");
  if (!(in.crimes_per_year >= 0.0)) fail(ErrorCode::RangeError, "crimes per year must be >= 0");
  if (!(in.baseline_budget >= 0.0)) fail(ErrorCode::RangeError, "baseline budget must be >= 0");
  validate(in.elasticities);

  const double efficiency = effective_efficiency(in);
  const EnforcementResponseParams response{in.status_quo_p, in.p_max, efficiency};
  std::vector<BuiltAlternative> out;

  BuiltAlternative first;
  first.alternative = {"not_counteract_strongly", 0.0, 0.0, 0.0, in.tev_per_crime, 0.0};
  first.p = in.status_quo_p;
  first.efficiency = efficiency;
  out.push_back(first);

  const std::array<std::string, 2> names = {"enhance_counteraction", "maximum_counteraction"};
  for (std::size_t k = 0; k < 2; ++k) {
    if (!(in.extra_budget[k] >= 0.0)) fail(ErrorCode::RangeError, "extra budget must be >= 0");
    if (!(in.redirect_share[k] >= 0.0)) fail(ErrorCode::RangeError, "redirect share must be >= 0");
    // Extra spend is measured against the damage at stake across all crimes.
    const double p = enforcement_response(in.extra_budget[k], tev_at_risk(in), response);
    BuiltAlternative b;
    b.p = p;
    b.efficiency = efficiency;
    b.delta_imprisonment = (p - in.status_quo_p) * in.crimes_per_year;
    b.alternative.name = names[k];
    b.alternative.enforcement_budget = in.extra_budget[k];
    b.alternative.redirected_resource_cost = in.redirect_share[k] * in.extra_budget[k];
    b.alternative.expected_crimes_averted = imprisonment_effect(in.elasticities, b.delta_imprisonment);
    b.alternative.tev_per_averted_crime = in.tev_per_crime;
    b.alternative.tourism_uplift = in.tourism_uplift_share[k] * in.tourism_baseline;
    out.push_back(b);
  }
  return out;
}

}  // namespace heritage

#pragma once

// Run configuration: a flat `key = value` text file. Every key has a default;
// unknown keys are rejected. Values are parsed and checked against module
// invariants before any computation runs.

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "heritage/crime_market.hpp"
#include "heritage/econ_core.hpp"
#include "heritage/error.hpp"
#include "heritage/funnel.hpp"
#include "heritage/io.hpp"
#include "heritage/microsim.hpp"
#include "heritage/scenario.hpp"
#include "heritage/valuation.hpp"

#ifndef HERITAGE_DATA_DIR
#define HERITAGE_DATA_DIR "data"
#endif

namespace heritage {

struct ConfigKey {
  std::string_view name;
  std::string_view default_value;
  std::string_view help;
};

// clang-format off
inline const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = {
      {"currency", "EUR", "currency code shared by every money value in the run"},
      {"seed", "20131231", "64-bit seed for the population simulation"},
      {"output_dir", "out", "directory receiving report and tables"},
      {"funnel_csv_path", HERITAGE_DATA_DIR "/bg_funnel_2000_2013.csv", "funnel statistics CSV"},
      {"survey_csv_path", "", "contingent-valuation survey CSV (empty: use tev.components)"},

      {"rubric.p_if_imprisonment", "0.01", "detection risk when effective imprisonments reach the threshold"},
      {"rubric.p_if_conviction_only", "0.001", "detection risk when only convictions reach the threshold"},
      {"rubric.p_if_inactive", "0", "detection risk otherwise"},
      {"rubric.imprisonment_threshold", "1", "mean effective imprisonments per year"},
      {"rubric.conviction_threshold", "1", "mean convicted persons per year"},
      {"funnel.active_offenders", "5000", "active offenders (treasure hunters)"},
      {"funnel.lambda", "10", "crimes per active offender per year"},
      {"calibrate.targets", "Total:0.01,Art208:0.001,Art277a:0.01,Art278:0.01,Art278a:0.001,Art278b:0",
       "category:p targets for rubric calibration"},

      {"tev.direct_approach", "normative", "normative | market"},
      {"tev.normative_cap", "2500", "ceiling for the normative direct value"},
      {"tev.comparables", "auction:10000", "source:amount list (auction, insurance, blackmarket, ticketrevenue)"},
      {"tev.combine", "max", "rule combining comparables: max | mean | median"},
      {"tev.before", "restaurants:100,hotels:200", "secondary revenue before exhibition, stream:amount list"},
      {"tev.during", "restaurants:180,hotels:260", "secondary revenue while exhibited, stream:amount list"},
      {"tev.components", "existence:15000,donation:5000", "non-use components kind:amount, used without a survey"},
      {"tev.educational_scientific", "0", "scientific part of the educational component"},
      {"tev.population", "1000", "population the survey mean is scaled to"},
      {"tev.trim_fraction", "0", "upper-tail share of bids dropped per component, in [0, 0.25]"},
      {"tourism.gdp", "41926000000", "GDP in the run currency (82e9 BGN at 1.95583 BGN/EUR)"},
      {"tourism.share", "0.136", "tourism share of GDP"},
      {"tourism.cultural_share", "0.12", "cultural share of tourism"},

      {"market.cpp_max", "0.02", "supply saturation, crimes per capita"},
      {"market.slope", "0.1", "supply responsiveness to net expected return"},
      {"market.midpoint", "20", "net expected return at half saturation"},
      {"market.wc", "60", "aggregate gain from a successful crime"},
      {"market.w", "30", "aggregate legal income"},
      {"market.s", "500", "aggregate monetised penalty"},
      {"market.p", "0.01", "detection risk for the point supply estimate"},
      {"market.tolerable_at_zero_cost", "0.005", "tolerated crimes per capita without enforcement"},
      {"market.marginal_damage", "4500000", "enforcement spend per unit of tolerated crime given up"},
      {"market.p_floor", "0", "detection risk without enforcement spend"},
      {"market.p_max", "0.2", "highest attainable detection risk"},
      {"market.efficiency", "0.5", "detection risk per unit of spend / tev_at_risk"},
      {"market.tev_at_risk", "22640", "damage at stake for the enforcement response"},
      {"market.eta", "1", "elasticity of demand for crimes"},
      {"market.epsilon", "1", "elasticity of supply of crimes"},
      {"market.delta_i", "100", "extra imprisonment in crime-equivalent units"},
      {"market.epsilon_sweep", "0,0.25,0.5,1,2,4,1e9", "supply elasticities for the imprisonment sweep"},
      {"market.p_sweep", "0,0.005,0.01,0.02,0.05,0.1,0.2", "detection risks for the supply curve table"},

      {"sim.n_agents", "10000", "agents per simulation"},
      {"sim.wage", "lognormal(3.4,0.5)", "legal income distribution"},
      {"sim.crime_gain", "lognormal(4.1,0.6)", "crime gain distribution"},
      {"sim.penalty", "uniform(10,100)", "perceived penalty distribution"},
      {"sim.risk_mix", "neutral@0.5;crra(2)@0.3;reference(30,2.25)@0.2", "utility@weight list separated by ';'"},
      {"sim.p", "0.01", "detection risk"},
      {"sim.lambda_active", "10", "mean crimes per committing agent"},
      {"sim.p_sweep", "0,0.001,0.01,0.05,0.1,0.5,1", "detection risks for the enforcement sweep"},

      {"scenario.baseline_budget", "500000", "current enforcement spend (anchors the response efficiency)"},
      {"scenario.efficiency", "", "response efficiency (empty: calibrated from the baseline budget)"},
      {"scenario.p_max", "0.5", "highest attainable detection risk"},
      {"scenario.extra_budget", "500000,2000000", "extra spend for alternatives 2 and 3"},
      {"scenario.redirect_share", "0.5,0.5", "redirected capacity cost as a share of extra spend"},
      {"scenario.tourism_uplift_share", "0,0", "tourism uplift as a share of the tourism baseline"},
      {"scenario.chosen_index", "0", "0-based index of the chosen alternative"},
  };
  return keys;
}
// clang-format on

inline std::string config_help() {
  std::string out = "Config keys (key = value, '#' starts a comment):\n";
  for (const auto& k : config_keys()) {
    out += "  " + std::string(k.name) + " = " + std::string(k.default_value) + "\n      " + std::string(k.help) + "\n";
  }
  return out;
}

/// Effective key/value map with every default filled in.
using ConfigValues = std::map<std::string, std::string>;

inline ConfigValues default_config_values() {
  ConfigValues v;
  for (const auto& k : config_keys()) v[std::string(k.name)] = std::string(k.default_value);
  return v;
}

inline void set_config_value(ConfigValues& values, const std::string& key, const std::string& value) {
  if (!values.contains(key)) fail(ErrorCode::ConfigError, "unknown config key '" + key + "'");
  values[key] = value;
}

inline ConfigValues parse_config_text(std::string_view text, const std::string& source = "config") {
  ConfigValues values = default_config_values();
  std::map<std::string, bool> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = io::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(line_no);
    if (eq == std::string_view::npos) fail(ErrorCode::ConfigError, where + ": expected 'key = value'");
    const std::string key(io::trim(line.substr(0, eq)));
    if (seen[key]) fail(ErrorCode::ConfigError, where + ": key '" + key + "' set twice");
    seen[key] = true;
    try {
      set_config_value(values, key, std::string(io::trim(line.substr(eq + 1))));
    } catch (const Error& e) {
      fail(e.code(), where + ": " + e.what());
    }
  }
  return values;
}

namespace config_detail {

[[noreturn]] inline void bad(const std::string& key, const std::string& value, const std::string& why) {
  fail(ErrorCode::ConfigError, "config key '" + key + "' = '" + value + "': " + why);
}

inline double number(const ConfigValues& v, const std::string& key) {
  double out = 0.0;
  if (!io::parse_double(v.at(key), out)) bad(key, v.at(key), "not a number");
  return out;
}

inline std::vector<double> numbers(const ConfigValues& v, const std::string& key) {
  std::vector<double> out;
  if (io::trim(v.at(key)).empty()) return out;
  for (const auto& item : io::split(v.at(key), ',')) {
    double x = 0.0;
    if (!io::parse_double(item, x)) bad(key, v.at(key), "not a comma-separated list of numbers");
    out.push_back(x);
  }
  return out;
}

inline std::array<double, 2> pair(const ConfigValues& v, const std::string& key) {
  const auto xs = numbers(v, key);
  if (xs.size() != 2) bad(key, v.at(key), "expected two comma-separated numbers");
  return {xs[0], xs[1]};
}

/// "name:amount,name:amount"
inline std::vector<std::pair<std::string, double>> named_amounts(const ConfigValues& v, const std::string& key) {
  std::vector<std::pair<std::string, double>> out;
  if (io::trim(v.at(key)).empty()) return out;
  for (const auto& item : io::split(v.at(key), ',')) {
    const auto parts = io::split(item, ':');
    double x = 0.0;
    if (parts.size() != 2 || !io::parse_double(parts[1], x)) bad(key, v.at(key), "expected name:amount pairs");
    out.emplace_back(lowercase(parts[0]), x);
  }
  return out;
}

/// "name(a,b,...)" -> name and arguments.
inline std::pair<std::string, std::vector<double>> call(const std::string& key, const std::string& text) {
  const auto open = text.find('(');
  const auto close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open || close + 1 != text.size())
    bad(key, text, "expected name(arguments)");
  std::vector<double> args;
  const std::string inner(io::trim(std::string_view(text).substr(open + 1, close - open - 1)));
  if (!inner.empty()) {
    for (const auto& a : io::split(inner, ',')) {
      double x = 0.0;
      if (!io::parse_double(a, x)) bad(key, text, "argument '" + a + "' is not a number");
      args.push_back(x);
    }
  }
  return {lowercase(io::trim(std::string_view(text).substr(0, open))), args};
}

inline DistributionSpec distribution(const ConfigValues& v, const std::string& key) {
  const auto [name, args] = call(key, std::string(io::trim(v.at(key))));
  auto need = [&](std::size_t n) {
    if (args.size() != n) bad(key, v.at(key), name + " takes " + std::to_string(n) + " argument(s)");
  };
  DistributionSpec d;
  if (name == "constant") {
    need(1);
    d = dist::Constant{args[0]};
  } else if (name == "uniform") {
    need(2);
    d = dist::Uniform{args[0], args[1]};
  } else if (name == "lognormal") {
    need(2);
    d = dist::LogNormal{args[0], args[1]};
  } else if (name == "logistic") {
    need(2);
    d = dist::Logistic{args[0], args[1]};
  } else {
    bad(key, v.at(key), "unknown distribution (constant, uniform, lognormal, logistic)");
  }
  try {
    validate(d);
  } catch (const Error& e) {
    bad(key, v.at(key), e.what());
  }
  return d;
}

inline UtilitySpec utility_spec(const std::string& key, const std::string& text) {
  UtilitySpec u;
  if (lowercase(text) == "neutral") {
    u = RiskNeutral{};
  } else {
    const auto [name, args] = call(key, text);
    if (name == "neutral" && args.empty()) {
      u = RiskNeutral{};
    } else if (name == "crra" && args.size() == 1) {
      u = Crra{args[0]};
    } else if (name == "reference" && args.size() == 2) {
      u = ReferencePoint{args[0], args[1]};
    } else {
      bad(key, text, "expected neutral, crra(rho) or reference(ref_income,loss_aversion)");
    }
  }
  try {
    validate(u);
  } catch (const Error& e) {
    bad(key, text, e.what());
  }
  return u;
}

inline std::vector<RiskMixEntry> risk_mix(const ConfigValues& v, const std::string& key) {
  std::vector<RiskMixEntry> out;
  for (const auto& item : io::split(v.at(key), ';')) {
    if (item.empty()) continue;
    const auto at = item.rfind('@');
    if (at == std::string::npos) bad(key, v.at(key), "each entry needs utility@weight");
    double w = 0.0;
    if (!io::parse_double(std::string_view(item).substr(at + 1), w)) bad(key, v.at(key), "weight is not a number");
    out.push_back({utility_spec(key, std::string(io::trim(std::string_view(item).substr(0, at)))), w});
  }
  if (out.empty()) bad(key, v.at(key), "risk mix is empty");
  return out;
}

template <class Enum, std::size_t N>
Enum lookup(const std::string& key, const std::string& value, const std::array<std::pair<std::string_view, Enum>, N>& table) {
  for (const auto& [name, e] : table)
    if (name == value) return e;
  std::string names;
  for (const auto& [name, e] : table) names += (names.empty() ? "" : ", ") + std::string(name);
  bad(key, value, "expected one of " + names);
}

inline const std::array<std::pair<std::string_view, SecondaryStream>, 5> kStreams = {{
    {"restaurants", SecondaryStream::Restaurants},
    {"souvenirshops", SecondaryStream::SouvenirShops},
    {"hotels", SecondaryStream::Hotels},
    {"transport", SecondaryStream::Transport},
    {"advertising", SecondaryStream::Advertising},
}};

inline SecondaryActivityLedger ledger(const ConfigValues& v, const std::string& key) {
  SecondaryActivityLedger out;
  out.period_label = key;
  for (const auto& [name, amount] : named_amounts(v, key)) {
    const auto stream = lookup(key, name, kStreams);
    if (out.streams.contains(stream)) bad(key, v.at(key), "stream '" + name + "' listed twice");
    if (!(amount >= 0.0)) bad(key, v.at(key), "amounts must be >= 0");
    out.streams[stream] = amount;
  }
  return out;
}

inline std::filesystem::path resolve_path(const std::string& value, const std::filesystem::path& base_dir) {
  std::filesystem::path p(value);
  if (p.is_relative()) p = base_dir / p;
  return p.lexically_normal();
}

}  // namespace config_detail

struct RunConfig {
  ConfigValues values;  // effective key/value pairs, defaults resolved
  std::string currency;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir;
  std::filesystem::path funnel_csv_path;
  std::optional<std::filesystem::path> survey_csv_path;

  DetectionRubric rubric;
  double active_offenders = 0.0;
  double lambda = 0.0;
  std::map<CrimeCategory, double> calibration_targets;

  DirectValueInput direct;
  SecondaryActivityLedger before;
  SecondaryActivityLedger during;
  std::vector<NonUseComponent> components;
  double survey_population = 0.0;
  double trim_fraction = 0.0;
  double gdp = 0.0;
  double tourism_share = 0.0;
  double cultural_share = 0.0;

  SupplyCurveParams supply;
  OffenderProfile market_profile;
  DemandConstraint demand;
  EnforcementResponseParams market_response;
  double market_tev_at_risk = 0.0;
  Elasticities elasticities;
  double delta_i = 0.0;
  std::vector<double> epsilon_sweep;
  std::vector<double> market_p_sweep;

  PopulationSpec population;
  std::vector<double> sim_p_sweep;

  double baseline_budget = 0.0;
  std::optional<double> scenario_efficiency;
  double scenario_p_max = 1.0;
  std::array<double, 2> extra_budget{};
  std::array<double, 2> redirect_share{};
  std::array<double, 2> tourism_uplift_share{};
  std::size_t chosen_index = 0;
};

/// Typed, validated configuration. Relative paths resolve against base_dir.
inline RunConfig resolve_config(const ConfigValues& values, const std::filesystem::path& base_dir) {
  using namespace config_detail;
  const auto& v = values;
  RunConfig c;
  c.values = values;

  // Wrap module validation errors so they name the offending key group.
  auto checked = [](const std::string& group, auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ConfigError) throw;
      fail(ErrorCode::ConfigError, group + ": " + e.what());
    }
  };

  c.currency = v.at("currency");
  if (c.currency.empty()) bad("currency", "", "currency code required");
  {
    long seed = 0;
    std::uint64_t useed = 0;
    const auto s = io::trim(v.at("seed"));
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), useed);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      if (!io::parse_long(s, seed)) bad("seed", v.at("seed"), "not an integer");
      useed = static_cast<std::uint64_t>(seed);
    }
    c.seed = useed;
  }
  c.output_dir = resolve_path(v.at("output_dir"), base_dir);
  c.funnel_csv_path = resolve_path(v.at("funnel_csv_path"), base_dir);
  if (!io::trim(v.at("survey_csv_path")).empty()) c.survey_csv_path = resolve_path(v.at("survey_csv_path"), base_dir);

  c.rubric = {number(v, "rubric.p_if_imprisonment"), number(v, "rubric.p_if_conviction_only"), number(v, "rubric.p_if_inactive"),
              number(v, "rubric.imprisonment_threshold"), number(v, "rubric.conviction_threshold")};
  checked("rubric", [&] { validate(c.rubric); });
  c.active_offenders = number(v, "funnel.active_offenders");
  c.lambda = number(v, "funnel.lambda");
  if (!(c.active_offenders > 0.0)) bad("funnel.active_offenders", v.at("funnel.active_offenders"), "must be > 0");
  if (!(c.lambda > 0.0)) bad("funnel.lambda", v.at("funnel.lambda"), "must be > 0");
  for (const auto& [name, p] : named_amounts(v, "calibrate.targets")) {
    CrimeCategory cat{};
    bool found = false;
    for (auto k : kCrimeCategories)
      if (lowercase(to_string(k)) == name) {
        cat = k;
        found = true;
      }
    if (!found) bad("calibrate.targets", v.at("calibrate.targets"), "unknown category '" + name + "'");
    if (!(p >= 0.0 && p <= 1.0)) bad("calibrate.targets", v.at("calibrate.targets"), "targets must lie in [0,1]");
    c.calibration_targets[cat] = p;
  }

  c.direct.approach = lookup("tev.direct_approach", lowercase(v.at("tev.direct_approach")),
                             std::array<std::pair<std::string_view, DirectApproach>, 2>{{{"normative", DirectApproach::Normative},
                                                                                         {"market", DirectApproach::Market}}});
  c.direct.normative_cap = number(v, "tev.normative_cap");
  c.direct.combine = lookup("tev.combine", lowercase(v.at("tev.combine")),
                            std::array<std::pair<std::string_view, CombineRule>, 3>{
                                {{"max", CombineRule::Max}, {"mean", CombineRule::Mean}, {"median", CombineRule::Median}}});
  for (const auto& [name, amount] : named_amounts(v, "tev.comparables")) {
    const auto source = lookup("tev.comparables", name,
                               std::array<std::pair<std::string_view, ComparableSource>, 4>{{{"auction", ComparableSource::Auction},
                                                                                             {"insurance", ComparableSource::Insurance},
                                                                                             {"blackmarket", ComparableSource::BlackMarket},
                                                                                             {"ticketrevenue", ComparableSource::TicketRevenue}}});
    c.direct.comparables.push_back({source, amount});
  }
  checked("tev direct value", [&] { (void)direct_value(c.direct); });
  c.before = ledger(v, "tev.before");
  c.during = ledger(v, "tev.during");
  const double scientific = number(v, "tev.educational_scientific");
  for (const auto& [name, amount] : named_amounts(v, "tev.components")) {
    checked("tev.components", [&] {
      const auto kind = parse_non_use_kind(name);
      std::optional<double> sci;
      if (kind == NonUseKind::Educational && scientific > 0.0) sci = scientific;
      c.components.emplace_back(kind, amount, sci);
    });
  }
  checked("tev.components", [&] { (void)tev_total(0.0, 0.0, c.components); });
  c.survey_population = number(v, "tev.population");
  c.trim_fraction = number(v, "tev.trim_fraction");
  if (!(c.survey_population > 0.0)) bad("tev.population", v.at("tev.population"), "must be > 0");
  if (!(c.trim_fraction >= 0.0 && c.trim_fraction <= 0.25)) bad("tev.trim_fraction", v.at("tev.trim_fraction"), "must lie in [0, 0.25]");
  c.gdp = number(v, "tourism.gdp");
  c.tourism_share = number(v, "tourism.share");
  c.cultural_share = number(v, "tourism.cultural_share");
  checked("tourism", [&] { (void)tourism_baseline(c.gdp, c.tourism_share, c.cultural_share); });

  c.supply = {number(v, "market.cpp_max"), number(v, "market.slope"), number(v, "market.midpoint")};
  checked("market supply", [&] { validate(c.supply); });
  c.market_profile = {number(v, "market.wc"), number(v, "market.w"), number(v, "market.s"), number(v, "market.p")};
  checked("market profile", [&] { validate(c.market_profile); });
  c.demand = {number(v, "market.tolerable_at_zero_cost"), number(v, "market.marginal_damage")};
  checked("market demand", [&] { validate(c.demand); });
  c.market_response = {number(v, "market.p_floor"), number(v, "market.p_max"), number(v, "market.efficiency")};
  checked("market response", [&] { validate(c.market_response); });
  c.market_tev_at_risk = number(v, "market.tev_at_risk");
  if (!(c.market_tev_at_risk > 0.0)) bad("market.tev_at_risk", v.at("market.tev_at_risk"), "must be > 0");
  c.elasticities = {number(v, "market.eta"), number(v, "market.epsilon")};
  checked("market elasticities", [&] { validate(c.elasticities); });
  c.delta_i = number(v, "market.delta_i");
  if (!(c.delta_i >= 0.0)) bad("market.delta_i", v.at("market.delta_i"), "must be >= 0");
  c.epsilon_sweep = numbers(v, "market.epsilon_sweep");
  for (double e : c.epsilon_sweep)
    checked("market.epsilon_sweep", [&] { validate(Elasticities{c.elasticities.eta, e}); });
  c.market_p_sweep = numbers(v, "market.p_sweep");
  for (double p : c.market_p_sweep)
    if (!(p >= 0.0 && p <= 1.0)) bad("market.p_sweep", v.at("market.p_sweep"), "values must lie in [0,1]");

  {
    double n = number(v, "sim.n_agents");
    if (!(n >= 1.0) || n != std::floor(n) || n > 1e9) bad("sim.n_agents", v.at("sim.n_agents"), "must be a positive integer");
    c.population.n_agents = static_cast<long>(n);
  }
  c.population.wage = distribution(v, "sim.wage");
  c.population.crime_gain = distribution(v, "sim.crime_gain");
  c.population.penalty_perception = distribution(v, "sim.penalty");
  c.population.risk_mix = risk_mix(v, "sim.risk_mix");
  c.population.p = number(v, "sim.p");
  c.population.lambda_active = number(v, "sim.lambda_active");
  c.population.seed = c.seed;
  checked("sim", [&] { validate(c.population); });
  c.sim_p_sweep = numbers(v, "sim.p_sweep");
  for (double p : c.sim_p_sweep)
    if (!(p >= 0.0 && p <= 1.0)) bad("sim.p_sweep", v.at("sim.p_sweep"), "values must lie in [0,1]");

  c.baseline_budget = number(v, "scenario.baseline_budget");
  if (!(c.baseline_budget >= 0.0)) bad("scenario.baseline_budget", v.at("scenario.baseline_budget"), "must be >= 0");
  if (!io::trim(v.at("scenario.efficiency")).empty()) {
    c.scenario_efficiency = number(v, "scenario.efficiency");
    if (!(*c.scenario_efficiency > 0.0)) bad("scenario.efficiency", v.at("scenario.efficiency"), "must be > 0");
  } else if (!(c.baseline_budget > 0.0)) {
    bad("scenario.baseline_budget", v.at("scenario.baseline_budget"), "must be > 0 when scenario.efficiency is empty");
  }
  c.scenario_p_max = number(v, "scenario.p_max");
  if (!(c.scenario_p_max > 0.0 && c.scenario_p_max <= 1.0)) bad("scenario.p_max", v.at("scenario.p_max"), "must lie in (0,1]");
  c.extra_budget = pair(v, "scenario.extra_budget");
  c.redirect_share = pair(v, "scenario.redirect_share");
  c.tourism_uplift_share = pair(v, "scenario.tourism_uplift_share");
  for (const auto* key : {"scenario.extra_budget", "scenario.redirect_share", "scenario.tourism_uplift_share"})
    for (double x : numbers(v, key))
      if (!(x >= 0.0) || !std::isfinite(x)) bad(key, v.at(key), "values must be finite and >= 0");
  {
    const double idx = number(v, "scenario.chosen_index");
    if (!(idx >= 0.0 && idx <= 2.0) || idx != std::floor(idx)) bad("scenario.chosen_index", v.at("scenario.chosen_index"), "must be 0, 1 or 2");
    c.chosen_index = static_cast<std::size_t>(idx);
  }
  return c;
}

}  // namespace heritage

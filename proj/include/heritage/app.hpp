#pragma once

// Run orchestration: load and validate every input a command needs, run the
// model chain, and emit a JSON (or flat CSV) report plus plot-ready tables.
// Reports carry no timestamps, so identical config, inputs and seed give
// byte-identical output.

#include <openssl/evp.h>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "heritage/config.hpp"
#include "heritage/crime_market.hpp"
#include "heritage/error.hpp"
#include "heritage/funnel.hpp"
#include "heritage/io.hpp"
#include "heritage/microsim.hpp"
#include "heritage/scenario.hpp"
#include "heritage/valuation.hpp"

namespace heritage {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class Command { Funnel, Tev, Market, Simulate, Scenario, Calibrate, All };
enum class ReportFormat { Json, Csv };

inline constexpr std::array<std::pair<std::string_view, Command>, 7> kCommands = {{
    {"funnel", Command::Funnel},
    {"tev", Command::Tev},
    {"market", Command::Market},
    {"simulate", Command::Simulate},
    {"scenario", Command::Scenario},
    {"calibrate", Command::Calibrate},
    {"all", Command::All},
}};

inline Command parse_command(std::string_view name) {
  for (const auto& [n, c] : kCommands)
    if (n == name) return c;
  fail(ErrorCode::ConfigError, "unknown subcommand '" + std::string(name) + "'");
}

inline std::string_view to_string(Command c) {
  for (const auto& [n, cmd] : kCommands)
    if (cmd == c) return n;
  return "";
}

inline std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    fail(ErrorCode::SolverFailure, "sha256 digest failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return out.str();
}

/// Shortest round-trip decimal form.
inline std::string format_number(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

/// Small CSV table builder.
class Table {
 public:
  Table(std::string name, std::vector<std::string> header) : name_(std::move(name)) { add_line(header); }

  template <class... Cells>
  void row(const Cells&... cells) {
    std::vector<std::string> fields;
    (fields.push_back(cell(cells)), ...);
    add_line(fields);
  }

  const std::string& name() const { return name_; }
  const std::string& text() const { return text_; }

 private:
  static std::string cell(double x) { return format_number(x); }
  static std::string cell(long x) { return std::to_string(x); }
  static std::string cell(int x) { return std::to_string(x); }
  static std::string cell(std::size_t x) { return std::to_string(x); }
  static std::string cell(std::string_view s) { return std::string(s); }
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }

  void add_line(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) text_ += ',';
      text_ += fields[i];
    }
    text_ += '\n';
  }

  std::string name_;
  std::string text_;
};

using Json = nlohmann::ordered_json;

struct RunOutput {
  Json report;
  std::vector<Table> tables;
};

struct LoadedInputs {
  std::optional<std::vector<FunnelRecord>> funnel;
  std::optional<io::SurveyData> survey;
  Json checksums = Json::array();
};

inline bool needs_funnel(Command c) {
  return c == Command::Funnel || c == Command::Scenario || c == Command::Calibrate || c == Command::All;
}
inline bool needs_valuation(Command c) { return c == Command::Tev || c == Command::Scenario || c == Command::All; }

/// Reads and validates every file the command depends on before any
/// computation starts.
inline LoadedInputs load_inputs(Command command, const RunConfig& config) {
  LoadedInputs in;
  if (needs_funnel(command)) {
    const auto text = io::read_file(config.funnel_csv_path);
    in.funnel = io::parse_funnel_csv(text, config.funnel_csv_path.string());
    in.checksums.push_back({{"role", "funnel"}, {"path", config.funnel_csv_path.string()}, {"sha256", sha256_hex(text)}});
  }
  if (needs_valuation(command) && config.survey_csv_path) {
    const auto text = io::read_file(*config.survey_csv_path);
    in.survey = io::parse_survey_csv(text, config.survey_csv_path->string());
    if (!in.survey->currency.empty() && in.survey->currency != config.currency)
      fail(ErrorCode::CurrencyMismatch,
           "survey currency " + in.survey->currency + " differs from run currency " + config.currency);
    in.checksums.push_back({{"role", "survey"}, {"path", config.survey_csv_path->string()}, {"sha256", sha256_hex(text)}});
  }
  return in;
}

/// Config text that identifies a result. The output location is excluded.
inline std::string canonical_config(const ConfigValues& values) {
  std::string out;
  for (const auto& [k, v] : values)
    if (k != "output_dir") out += k + "=" + v + "\n";
  return out;
}

/// Report with run-location fields removed, for comparing reruns that wrote
/// to different directories.
inline Json normalize_provenance(Json report) {
  if (report.contains("config")) report["config"].erase("output_dir");
  return report;
}

namespace app_detail {

inline Json warnings_json(const std::vector<std::string>& w) {
  Json out = Json::array();
  for (const auto& s : w) out.push_back(s);
  return out;
}

inline Json rubric_json(const DetectionRubric& r) {
  return {{"p_if_imprisonment", r.p_if_imprisonment},
          {"p_if_conviction_only", r.p_if_conviction_only},
          {"p_if_inactive", r.p_if_inactive},
          {"imprisonment_threshold", r.imprisonment_threshold},
          {"conviction_threshold", r.conviction_threshold}};
}

inline Json run_funnel(const RunConfig& c, const std::vector<FunnelRecord>& records, RunOutput& out) {
  Table stages("funnel_stages.csv", {"category", "years", "submission_rate", "convictions_per_year", "imprisonments_per_year", "p"});
  Json categories = Json::object();
  for (auto cat : kCrimeCategories) {
    bool present = false;
    for (const auto& r : records) present = present || r.category == cat;
    if (!present) continue;
    const auto rates = stage_rates(records, cat);
    const double p = detection_risk(records, cat, c.rubric);
    categories[std::string(to_string(cat))] = {{"years", rates.years},
                                               {"submission_rate", rates.submission_rate},
                                               {"convictions_per_year", rates.convictions_per_year},
                                               {"imprisonments_per_year", rates.imprisonments_per_year},
                                               {"p", p}};
    stages.row(to_string(cat), rates.years, rates.submission_rate, rates.convictions_per_year, rates.imprisonments_per_year, p);
  }

  long peak = 0;
  long synthetic = 0;
  bool have_total = false;
  for (const auto& r : records) {
    synthetic += r.synthetic ? 1 : 0;
    if (r.category == CrimeCategory::Total) {
      peak = have_total ? std::max(peak, r.registered) : r.registered;
      have_total = true;
    }
  }
  Json coverage = nullptr;
  if (have_total) {
    coverage = {{"registered_per_year_peak", peak},
                {"active_offenders", c.active_offenders},
                {"lambda", c.lambda},
                {"coverage", registration_coverage(static_cast<double>(peak), c.active_offenders, c.lambda)}};
  }
  out.tables.push_back(std::move(stages));
  return {{"records", records.size()},
          {"synthetic_records", synthetic},
          {"rubric", rubric_json(c.rubric)},
          {"categories", categories},
          {"registration_coverage", coverage}};
}

struct ValuationResult {
  Json json;
  double tev = 0.0;
  double tourism = 0.0;
};

inline ValuationResult run_valuation(const RunConfig& c, const std::optional<io::SurveyData>& survey, RunOutput& out) {
  const auto direct = direct_value(c.direct);
  const double additional = additional_monetary_value(c.before, c.during);

  std::vector<NonUseComponent> components;
  std::vector<std::string> warnings = direct.warnings;
  std::string source = "config";
  if (survey) {
    source = "survey";
    const auto agg = aggregate_wtp(survey->responses, c.survey_population, c.trim_fraction);
    warnings.insert(warnings.end(), agg.warnings.begin(), agg.warnings.end());
    for (const auto& [kind, value] : agg.values) components.emplace_back(kind, value);
  } else {
    components = c.components;
  }
  const auto breakdown = tev_total(direct.value, additional, components);
  const double tourism = tourism_baseline(c.gdp, c.tourism_share, c.cultural_share);

  Table table("tev_components.csv", {"component", "amount"});
  table.row("direct", breakdown.direct);
  table.row("additional", breakdown.additional);
  Json comps = Json::object();
  for (const auto& comp : breakdown.indirect_components) {
    Json j = {{"amount", comp.amount()}};
    if (comp.scientific_subvalue()) j["scientific_subvalue"] = *comp.scientific_subvalue();
    comps[std::string(to_string(comp.kind()))] = j;
    table.row(to_string(comp.kind()), comp.amount());
  }
  table.row("tev", breakdown.tev);
  out.tables.push_back(std::move(table));

  Json j = {{"currency", c.currency},
            {"direct", breakdown.direct},
            {"additional", breakdown.additional},
            {"indirect_source", source},
            {"indirect_components", comps},
            {"indirect", breakdown.indirect()},
            {"tev", breakdown.tev},
            {"tourism_baseline", tourism},
            {"warnings", warnings_json(warnings)}};
  return {j, breakdown.tev, tourism};
}

inline Json run_market(const RunConfig& c, RunOutput& out) {
  const double point = supply_cpp(c.supply, c.market_profile);

  Table curve("market_supply.csv", {"p", "net_expected_return", "cpp", "tolerated"});
  for (double p : c.market_p_sweep) {
    OffenderProfile prof = c.market_profile;
    prof.p = p;
    curve.row(p, net_expected_return(prof), supply_cpp(c.supply, prof),
              tolerated_level(c.demand, enforcement_spend_for(p, c.market_tev_at_risk, c.market_response)));
  }
  out.tables.push_back(std::move(curve));

  Table sweep("market_imprisonment.csv", {"eta", "epsilon", "delta_i", "crimes_reduced"});
  for (double e : c.epsilon_sweep) {
    const Elasticities el{c.elasticities.eta, e};
    sweep.row(el.eta, el.epsilon, c.delta_i, imprisonment_effect(el, c.delta_i));
  }
  out.tables.push_back(std::move(sweep));

  const auto eq = solve_equilibrium(c.supply, c.demand, c.market_profile, c.market_response, c.market_tev_at_risk);
  if (!eq.converged)
    fail(ErrorCode::SolverFailure, "equilibrium residual " + format_number(eq.residual) + " above tolerance after " +
                                       std::to_string(eq.iterations) + " iterations");
  return {{"supply_at_p", {{"p", c.market_profile.p}, {"net_expected_return", net_expected_return(c.market_profile)}, {"cpp", point}}},
          {"equilibrium",
           {{"p_star", eq.p_star}, {"crime_level", eq.crime_level}, {"residual", eq.residual}, {"iterations", eq.iterations}}},
          {"imprisonment_effect",
           {{"eta", c.elasticities.eta}, {"epsilon", c.elasticities.epsilon}, {"delta_i", c.delta_i},
            {"crimes_reduced", imprisonment_effect(c.elasticities, c.delta_i)}}}};
}

inline Json sim_json(const SimResult& r, const PopulationSpec& spec) {
  Json mix = Json::array();
  for (std::size_t i = 0; i < spec.risk_mix.size(); ++i)
    mix.push_back({{"utility", describe(spec.risk_mix[i].utility)},
                   {"weight", spec.risk_mix[i].weight},
                   {"agents", r.agents_by_mix[i]},
                   {"committing", r.committing_by_mix[i]}});
  return {{"p", spec.p},         {"cpr", r.cpr}, {"lambda_realized", r.lambda_realized}, {"cpp", r.cpp},
          {"n_committing", r.n_committing}, {"total_crimes", r.total_crimes}, {"stderr_cpr", r.stderr_cpr}, {"risk_mix", mix}};
}

inline Json run_simulation(const RunConfig& c, RunOutput& out) {
  const auto base = simulate_population(c.population);
  const auto sweep = enforcement_sweep(c.population, c.sim_p_sweep);
  Table table("sim_sweep.csv", {"p", "cpr", "lambda_realized", "cpp", "n_committing", "stderr_cpr"});
  Json points = Json::array();
  for (const auto& pt : sweep) {
    table.row(pt.p, pt.result.cpr, pt.result.lambda_realized, pt.result.cpp, pt.result.n_committing, pt.result.stderr_cpr);
    points.push_back({{"p", pt.p}, {"cpr", pt.result.cpr}, {"cpp", pt.result.cpp}});
  }
  out.tables.push_back(std::move(table));
  return {{"n_agents", c.population.n_agents}, {"seed", c.population.seed}, {"result", sim_json(base, c.population)}, {"sweep", points}};
}

inline Json run_scenario(const RunConfig& c, const std::vector<FunnelRecord>& records, const ValuationResult& valuation,
                         RunOutput& out) {
  AlternativeBuildInputs in;
  in.status_quo_p = detection_risk(records, CrimeCategory::Total, c.rubric);
  in.baseline_budget = c.baseline_budget;
  in.tev_per_crime = valuation.tev;
  in.crimes_per_year = c.active_offenders * c.lambda;
  in.tourism_baseline = valuation.tourism;
  in.elasticities = c.elasticities;
  in.p_max = c.scenario_p_max;
  in.efficiency = c.scenario_efficiency;
  in.extra_budget = c.extra_budget;
  in.redirect_share = c.redirect_share;
  in.tourism_uplift_share = c.tourism_uplift_share;
  if (in.status_quo_p > in.p_max) fail(ErrorCode::ConfigError, "scenario.p_max is below the status-quo detection risk");

  const auto built = build_alternatives_from_model(in);
  std::vector<ScenarioAlternative> alts;
  for (const auto& b : built) alts.push_back(b.alternative);
  const auto report = opportunity_cost(alts, c.chosen_index);

  Table table("scenario_alternatives.csv",
              {"index", "name", "p", "delta_imprisonment", "crimes_averted", "benefits", "costs", "net", "rank"});
  Json list = Json::array();
  for (std::size_t i = 0; i < alts.size(); ++i) {
    const auto rank = static_cast<std::size_t>(std::find(report.ranking.begin(), report.ranking.end(), i) - report.ranking.begin());
    const auto& a = alts[i];
    const auto& v = report.values[i];
    list.push_back({{"name", a.name},
                    {"p", built[i].p},
                    {"delta_imprisonment", built[i].delta_imprisonment},
                    {"enforcement_budget", a.enforcement_budget},
                    {"redirected_resource_cost", a.redirected_resource_cost},
                    {"expected_crimes_averted", a.expected_crimes_averted},
                    {"tev_per_averted_crime", a.tev_per_averted_crime},
                    {"tourism_uplift", a.tourism_uplift},
                    {"benefits", v.benefits},
                    {"costs", v.costs},
                    {"net", v.net}});
    table.row(i, a.name, built[i].p, built[i].delta_imprisonment, a.expected_crimes_averted, v.benefits, v.costs, v.net, rank);
  }
  out.tables.push_back(std::move(table));

  return {{"inputs",
           {{"status_quo_p", in.status_quo_p},
            {"baseline_budget", in.baseline_budget},
            {"tev_per_crime", in.tev_per_crime},
            {"crimes_per_year", in.crimes_per_year},
            {"tev_at_risk", tev_at_risk(in)},
            {"efficiency", built.front().efficiency},
            {"efficiency_calibrated", !in.efficiency.has_value()},
            {"p_max", in.p_max},
            {"eta", in.elasticities.eta},
            {"epsilon", in.elasticities.epsilon}}},
          {"alternatives", list},
          {"ranking", report.ranking},
          {"chosen_index", report.chosen},
          {"opportunity_cost_of_chosen", report.opportunity_cost_of_chosen},
          {"best_rejected_index", report.best_rejected},
          {"chosen_dominated", report.chosen_dominated},
          {"net_differences", report.net_differences}};
}

inline Json run_calibration(const RunConfig& c, const std::vector<FunnelRecord>& records, RunOutput& out) {
  const auto result = calibrate_rubric(records, c.calibration_targets);
  Table table("calibration.csv", {"category", "target", "fitted"});
  Json per = Json::object();
  for (const auto& [cat, target] : c.calibration_targets) {
    const double fitted = detection_risk(records, cat, result.rubric);
    per[std::string(to_string(cat))] = {{"target", target}, {"fitted", fitted}};
    table.row(to_string(cat), target, fitted);
  }
  out.tables.push_back(std::move(table));
  return {{"rubric", rubric_json(result.rubric)},
          {"is_default_rubric", result.rubric == DetectionRubric{}},
          {"mismatches", result.mismatches},
          {"mismatched_categories", result.mismatched},
          {"categories", per}};
}

}  // namespace app_detail

inline RunOutput execute(Command command, const RunConfig& config) {
  using namespace app_detail;
  const auto inputs = load_inputs(command, config);

  RunOutput out;
  Json effective = Json::object();
  for (const auto& [k, v] : config.values) effective[k] = v;
  out.report["provenance"] = {{"tool", "heritage-crime"},
                              {"version", kToolVersion},
                              {"command", to_string(command)},
                              {"seed", config.seed},
                              {"config_sha256", sha256_hex(canonical_config(config.values))},
                              {"inputs", inputs.checksums}};
  out.report["config"] = effective;

  const bool all = command == Command::All;
  if (command == Command::Funnel || all) out.report["funnel"] = run_funnel(config, *inputs.funnel, out);
  std::optional<ValuationResult> valuation;
  if (needs_valuation(command)) {
    valuation = run_valuation(config, inputs.survey, out);
    out.report["tev"] = valuation->json;
  }
  if (command == Command::Market || all) out.report["market"] = run_market(config, out);
  if (command == Command::Simulate || all) out.report["simulate"] = run_simulation(config, out);
  if (command == Command::Scenario || all) out.report["scenario"] = run_scenario(config, *inputs.funnel, *valuation, out);
  if (command == Command::Calibrate || all) out.report["calibrate"] = run_calibration(config, *inputs.funnel, out);
  return out;
}

namespace app_detail {

inline void flatten(const Json& j, const std::string& prefix, Table& table) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, table);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", table);
  } else if (j.is_number_float()) {
    table.row(prefix, format_number(j.get<double>()));
  } else if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s.find_first_of(",\"\n") != std::string::npos) {
      std::string q = "\"";
      for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      s = q + "\"";
    }
    table.row(prefix, s);
  } else {
    table.row(prefix, j.dump());
  }
}

}  // namespace app_detail

inline std::string render_report(const RunOutput& out, ReportFormat format) {
  if (format == ReportFormat::Json) return out.report.dump(2) + "\n";
  Table flat("report.csv", {"key", "value"});
  app_detail::flatten(out.report, "", flat);
  return flat.text();
}

inline std::string report_filename(ReportFormat format) { return format == ReportFormat::Json ? "report.json" : "report.csv"; }

inline void write_outputs(const RunOutput& out, const std::filesystem::path& dir, ReportFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::FileNotFound, "cannot create output directory " + dir.string() + ": " + ec.message());
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream f(dir / name, std::ios::binary | std::ios::trunc);
    if (!f) fail(ErrorCode::FileNotFound, "cannot write " + (dir / name).string());
    f << text;
  };
  write(report_filename(format), render_report(out, format));
  for (const auto& t : out.tables) write(t.name(), t.text());
}

struct RunRequest {
  Command command = Command::All;
  std::optional<std::filesystem::path> config_path;
  std::optional<std::string> out_dir;
  std::optional<std::string> seed;
  ReportFormat format = ReportFormat::Json;
  std::vector<std::pair<std::string, std::string>> overrides;  // key=value applied after the file
};

/// Full run: parse config, validate, compute, write. Returns the process exit
/// code (0 ok, 1 validation error, 2 solver failure) and reports errors as
/// "error CODE: message" on `err`.
inline int run(const RunRequest& request, std::ostream& err) {
  try {
    ConfigValues values = default_config_values();
    std::filesystem::path base_dir = std::filesystem::current_path();
    if (request.config_path) {
      values = parse_config_text(io::read_file(*request.config_path), request.config_path->string());
      base_dir = std::filesystem::absolute(*request.config_path).parent_path();
    }
    for (const auto& [k, v] : request.overrides) set_config_value(values, k, v);
    if (request.seed) set_config_value(values, "seed", *request.seed);
    if (request.out_dir) {
      set_config_value(values, "output_dir", std::filesystem::absolute(*request.out_dir).lexically_normal().string());
    }
    const RunConfig config = resolve_config(values, base_dir);
    const RunOutput out = execute(request.command, config);
    write_outputs(out, config.output_dir, request.format);
    return 0;
  } catch (const Error& e) {
    err << "error " << to_string(e.code()) << ": " << e.what() << "\n";
    return is_solver_failure(e.code()) ? 2 : 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error " << to_string(ErrorCode::SolverFailure) << ": " << e.what() << "\n";
    return 2;
  }
}

}  // namespace heritage

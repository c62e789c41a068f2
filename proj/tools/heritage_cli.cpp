// heritage: command-line front end for the heritage-crime model chain.
//
//   heritage <funnel|tev|market|simulate|scenario|calibrate|all>
//            [--config PATH] [--out DIR] [--seed N] [--format json|csv]
//            [--set key=value]...

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "heritage/app.hpp"

namespace {

const char* describe(heritage::Command c) {
  using heritage::Command;
  switch (c) {
    case Command::Funnel: return "stage rates, detection risks and registration coverage";
    case Command::Tev: return "total economic value chain";
    case Command::Market: return "supply curve, equilibrium and imprisonment sweeps";
    case Command::Simulate: return "agent population simulation and enforcement sweep";
    case Command::Scenario: return "three counteraction alternatives and opportunity cost";
    case Command::Calibrate: return "fit the detection rubric to target risks";
    case Command::All: return "every section above";
  }
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Economic model of crimes against cultural-historical and archaeological heritage"};
  app.footer(heritage::config_help());
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  std::string seed;
  std::string format = "json";
  std::vector<std::string> sets;

  app.add_option("--config", config_path, "run config file (key = value)");
  app.add_option("--out", out_dir, "output directory (overrides output_dir)");
  app.add_option("--seed", seed, "simulation seed (overrides seed)");
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--set", sets, "override one config key, key=value (repeatable)");

  heritage::RunRequest request;
  for (const auto& [name, command] : heritage::kCommands) {
    auto* sub = app.add_subcommand(std::string(name), describe(command));
    sub->callback([&request, command = command] { request.command = command; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (!config_path.empty()) request.config_path = config_path;
  if (!out_dir.empty()) request.out_dir = out_dir;
  if (!seed.empty()) request.seed = seed;
  request.format = format == "csv" ? heritage::ReportFormat::Csv : heritage::ReportFormat::Json;
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error " << heritage::to_string(heritage::ErrorCode::ConfigError) << ": --set expects key=value, got '" << kv
                << "'\n";
      return 1;
    }
    request.overrides.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return heritage::run(request, std::cerr);
}

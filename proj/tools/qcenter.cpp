#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qcenter/errors.hpp"
#include "qcli/runner.hpp"

namespace {

enum ExitCode { kSuccess = 0, kAssertion = 1, kParse = 2, kValidation = 3 };

int report_error(const std::exception& e, int code) {
  std::cerr << "qcenter: " << e.what() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical and quantum centers of invariant algebras on symplectic vector spaces"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::optional<int> truncation, max_degree;
  std::string format = "text";
  std::string out_path;

  auto* run = app.add_subcommand("run", "run a scenario and print its report");
  run->add_option("scenario", scenario_path, "scenario JSON file or preset name")->required();
  run->add_option("--truncation", truncation, "hbar truncation order N");
  run->add_option("--max-degree", max_degree, "degree bound D");
  run->add_option("--report", format, "report format")->check(CLI::IsMember({"text", "json"}));
  run->add_option("--out", out_path, "write the report here instead of stdout");

  auto* validate = app.add_subcommand("validate", "parse and validate a scenario");
  validate->add_option("scenario", scenario_path, "scenario JSON file or preset name")->required();

  app.add_subcommand("list-presets", "list the shipped scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  if (app.got_subcommand("list-presets")) {
    for (const auto& [name, text] : qcli::presets()) std::cout << name << "\n";
    return kSuccess;
  }

  for (const auto& [flag, value] : {std::pair{"--truncation", truncation}, std::pair{"--max-degree", max_degree}})
    if (value && *value < 0) {
      std::cerr << "qcenter: " << flag << " must be non-negative\n";
      return kValidation;
    }

  qcli::Scenario scenario;
  try {
    scenario = qcli::load_scenario(scenario_path);
  } catch (const qcenter::ParseError& e) {
    return report_error(e, kParse);
  } catch (const qcenter::Error& e) {
    return report_error(e, kValidation);
  }

  if (app.got_subcommand("validate")) {
    std::cout << "scenario " << scenario.name << " is valid\n";
    return kSuccess;
  }

  qcli::RunResult result;
  try {
    result = qcli::run_scenario(scenario, {truncation, max_degree});
  } catch (const qcenter::ParseError& e) {
    return report_error(e, kParse);
  } catch (const qcenter::Error& e) {
    return report_error(e, kValidation);
  }
  const std::string bytes =
      qcli::emit_report(result.report, format == "json" ? qcli::ReportFormat::json : qcli::ReportFormat::text);
  if (out_path.empty()) {
    std::cout << bytes;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "qcenter: cannot write " << out_path << "\n";
      return kParse;
    }
    out << bytes;
  }
  return result.passed ? kSuccess : kAssertion;
}

// Command-line front end: runs scenario files or presets, renders reports,
// lists the preset catalog, and runs the built-in verification suite.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lorhol/scenario.hpp"
#include "lorhol/verify.hpp"

namespace {

int report_exit_code(const lorhol::Report& r) {
  const auto& verdicts = r.at("verdicts");
  if (!verdicts.at("certified").get<bool>() || verdicts.at("conditional").get<bool>()) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"holonomy computations for special Lorentzian metric charts"};
  app.require_subcommand(1);

  std::string scenario_path, preset_name, out_path, format = "json";
  double tol = -1.0;

  CLI::App* compute = app.add_subcommand("compute", "run a scenario and emit its report");
  compute->add_option("--scenario", scenario_path, "scenario file (key = value lines)");
  compute->add_option("--preset", preset_name, "preset name (see 'preset list')");
  compute->add_option("--out", out_path, "write the report to this path instead of stdout");
  compute->add_option("--format", format, "output format: json | table")
      ->check(CLI::IsMember({"json", "table"}));
  compute->add_option("--tol", tol, "override the default tolerance");

  CLI::App* preset = app.add_subcommand("preset", "preset catalog");
  preset->add_subcommand("list", "list available preset names");

  app.add_subcommand("verify", "run the built-in verification suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (compute->parsed()) {
      if (scenario_path.empty() == preset_name.empty()) {
        std::cerr << "compute requires exactly one of --scenario or --preset\n";
        return 2;
      }
      lorhol::Scenario s = scenario_path.empty() ? lorhol::scenario_preset(preset_name)
                                                 : lorhol::load_scenario(scenario_path);
      if (tol > 0.0) {
        s.tol = tol;
      } else if (const char* env = std::getenv("LORHOL_TOL")) {
        s.tol = std::stod(env);
      }
      lorhol::Report r = lorhol::run_scenario(s);
      if (out_path.empty()) {
        std::cout << lorhol::render_report(r, format);
      } else {
        lorhol::emit_report(r, out_path, format);
      }
      return report_exit_code(r);
    }
    if (preset->parsed()) {
      for (const std::string& name : lorhol::preset_names()) std::cout << name << "\n";
      return 0;
    }
    // verify
    std::vector<lorhol::CriterionResult> results = lorhol::run_verification();
    std::cout << lorhol::verification_report(results);
    for (const auto& res : results) {
      if (!res.pass) return 2;
    }
    return 0;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
}

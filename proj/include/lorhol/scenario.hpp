#pragma once

// Scenario ingestion (key-value files with an explicit schema version), the
// preset catalog covering the example families handled by the library,
// orchestration of the computational tasks, and deterministic report output.

#include <string>
#include <vector>

#include <json.hpp>

#include "lorhol/quotient.hpp"
#include "lorhol/spin.hpp"

namespace lorhol {

using Report = nlohmann::ordered_json;

struct Scenario {
  int schema = 1;
  std::string preset;              // preset name, empty for explicit scenarios
  std::string family;              // human-readable description of the setup
  std::vector<std::string> tasks;  // transport | algebra-sample | classify |
                                   // quotient-holonomy | spin-check
  double tol = 1e-8;

  enum class ChartKind { None, PpWave, CahenWallach, Flat };
  ChartKind chart_kind = ChartKind::None;
  PpWaveChart chart;               // PpWave / CahenWallach charts
  CahenWallachSpec cw;             // profile data for the symmetric spaces
  int cw_power = 0;                // centralizer power m
  double cw_alpha = 1.0;
  std::vector<MatrixXd> flat_linear;  // linear parts for flat quotients
  std::vector<DeckIsometry> deck;
  VectorXd base;
  int word_bound = 4;
  std::string spin_preset;         // for the spin-check task
};

// Catalog of ready-made scenarios; throws std::invalid_argument for unknown
// names.
std::vector<std::string> preset_names();
Scenario scenario_preset(const std::string& name);

// Parses and validates a scenario file; unknown keys and unsupported schema
// versions are rejected with the offending line in the message.
Scenario load_scenario(const std::string& path);

// Executes the task list in order and assembles the report; results marked
// conditional carry their caveat strings in the verdicts block.
Report run_scenario(const Scenario& s);

// Renders to "json" (stable key order, indented) or "table" (aligned text).
std::string render_report(const Report& report, const std::string& format);
void emit_report(const Report& report, const std::string& path, const std::string& format);

}  // namespace lorhol

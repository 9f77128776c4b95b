#pragma once

// Built-in verification suite: a fixed list of end-to-end checks exercising
// transport, quotient holonomy, classification, decoupling, spin fixed
// spaces, discontinuity verdicts, and report determinism.

#include <string>
#include <vector>

namespace lorhol {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  std::string detail;   // measured values or the first failure
  double seconds = 0.0; // wall-clock runtime of the criterion
};

// Runs every criterion; never throws (failures are captured in the results).
std::vector<CriterionResult> run_verification();

// One line per criterion, deterministic bytes (timings are not printed).
std::string verification_report(const std::vector<CriterionResult>& results);

}  // namespace lorhol

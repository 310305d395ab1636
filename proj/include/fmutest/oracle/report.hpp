#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "fmutest/oracle/aggregate.hpp"

namespace fmutest::oracle {

struct GoalOutcome {
  int plans_passed = 0;
  int plans_total = 0;

  [[nodiscard]] std::string text() const {
    return std::to_string(plans_passed) + "/" + std::to_string(plans_total);
  }
};

struct ReportBundle {
  nlohmann::json report;
  /// test_id -> plot payload (series plus overlay geometry)
  std::map<std::string, nlohmann::json> plots;
};

/// Overlay geometry for one verdict: bands, thresholds, markers, windows.
nlohmann::json overlay_for(const AssertionVerdict& v);

/// Per-goal outcome counts plans; a plan passes when all its scenarios pass.
std::map<std::string, GoalOutcome> goal_outcomes(const std::vector<ScenarioVerdict>& verdicts);

/// Pass rate over scenarios, rounded to 2 decimals (0 for no scenarios).
double aggregate_pass_rate(const std::vector<ScenarioVerdict>& verdicts);

ReportBundle render_report(const std::vector<ScenarioVerdict>& verdicts,
                           const std::vector<sim::SimulationResult>& results,
                           const std::vector<signal::Scenario>& scenarios);

}  // namespace fmutest::oracle

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fmutest/oracle/evaluators.hpp"
#include "fmutest/signal/instantiate.hpp"
#include "fmutest/sim/runner.hpp"

namespace fmutest::oracle {

struct ScenarioVerdict {
  std::string test_id;
  std::vector<AssertionVerdict> assertion_verdicts;
  bool passed = false;
};

/// Evaluates one assertion against a result. target_var levels come from the
/// scenario inputs. Throws MissingOutput / NonConstantTarget; an empty window
/// becomes a failed verdict.
AssertionVerdict evaluate(const scenario::AssertionSpec& a, const signal::Scenario& scn,
                          const sim::SimulationResult& result);

/// Conjunction over the scenario's assertions. A sim_error result fails every
/// assertion with detail "simulation error".
ScenarioVerdict aggregate(const signal::Scenario& scn, const sim::SimulationResult& result);

nlohmann::json to_json(const AssertionVerdict& v);
nlohmann::json to_json(const ScenarioVerdict& v);

}  // namespace fmutest::oracle

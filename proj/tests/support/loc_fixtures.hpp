#pragma once

// Literal LOC artefacts shared by tests: the reference constraint set, the
// load-step goal and plan, and a typed expectation of the constraints.

#include <string>

#include <json.hpp>

#include "fmutest/scenario/dedup.hpp"
#include "fmutest/scenario/types.hpp"
#include "fmutest/scenario/validation.hpp"
#include "fmutest/signal/instantiate.hpp"
#include "fmutest/signal/sim_config.hpp"

namespace fmutest_test {

inline constexpr const char* kLocConstraintsText = R"({"inputs": [
    {"name": "temperature_cooling_liquid_in", "min": 0, "max": 100, "unit": "degC"},
    {"name": "mass_flow_cooling_liquid_in", "min": 0, "max": 50, "unit": "kg/s"},
    {"name": "setpoint_temperature_oil", "min": 30, "max": 90, "unit": "degC"},
    {"name": "engine_load", "min": 0,"max": 1, "unit": ""}],
  "outputs": [
    {"name": "temperature_cooling_liquid_out", "min": 0, "max": 100, "unit": "degC"},
    {"name": "mass_flow_cooling_liquid_out", "min": 0, "max": 50, "unit": "kg/s"},
    {"name": "temperature_oil", "min": 0, "max": 100, "unit": "degC"},
    {"name": "position_valve", "min": 0, "max": 1, "unit": ""} ] })";

inline constexpr const char* kLoadStepGoalText = R"({    "id": "G001",
    "pattern": "Given-When-Then",
    "given": "temperature_cooling_liquid_in, mass_flow_cooling_liquid_in, engine_load are at nominal values; setpoint_temperature_oil is constant.",
    "when": "engine_load is increased with a step change.",
    "then": [
        "temperature_oil settles to setpoint_temperature_oil and stays there for the remaining simulation time.",
        "temperature_cooling_liquid_out increases monotonically.",
        "position_valve decreases monotonically.",
        "mass_flow_cooling_liquid_out remains within its valid range."    ],
    "goal_rationale": "Verifies closed-loop regulation and output responses to a sudden increase in engine_load.",
    "target_count": 1,
    "target_count_rationale": "A single step increase covers primary regulation behavior."})";

inline constexpr const char* kLoadStepPlanText = R"({    "id": "G001-P001",
      "param_space": {
        "temperature_cooling_liquid_in": {"pattern": "constant", "value":[50.0]},
        "mass_flow_cooling_liquid_in": {"pattern": "constant", "value":[25.0]},
        "setpoint_temperature_oil": {"pattern": "constant", "value":[70.0]},
        "engine_load": {"pattern": "step", "from": 0.5, "to":[0.9], "at":[150.0]}      },
      "assertions": [
        {"kind": "settles_to", "var": "temperature_oil", "target_var": "setpoint_temperature_oil", "tol": 1.0, "within": 700.0},
        {"kind": "monotonic_increasing", "var": "temperature_cooling_liquid_out", "from_timestep": 150.0, "to_timestep": 999.0, "eps": 0.05},
        {"kind": "monotonic_decreasing", "var": "position_valve", "from_timestep": 150.0, "to_timestep": 999.0, "eps": 0.01},
        {"kind": "bounded", "var": "mass_flow_cooling_liquid_out", "low": 0.0, "high": 50.0}      ]})";

/// Hand-written expectation for kLocConstraintsText.
inline fmutest::scenario::ConstraintSet expected_loc_constraints() {
  using fmutest::scenario::IoConstraint;
  fmutest::scenario::ConstraintSet cs;
  cs.inputs = {IoConstraint{"temperature_cooling_liquid_in", 0, 100, "degC"},
               IoConstraint{"mass_flow_cooling_liquid_in", 0, 50, "kg/s"},
               IoConstraint{"setpoint_temperature_oil", 30, 90, "degC"},
               IoConstraint{"engine_load", 0, 1, ""}};
  cs.outputs = {IoConstraint{"temperature_cooling_liquid_out", 0, 100, "degC"},
                IoConstraint{"mass_flow_cooling_liquid_out", 0, 50, "kg/s"},
                IoConstraint{"temperature_oil", 0, 100, "degC"},
                IoConstraint{"position_valve", 0, 1, ""}};
  return cs;
}

inline fmutest::signal::SimulationConfig loc_sim_config() {
  fmutest::signal::SimulationConfig cfg;
  cfg.start_time = 0.0;
  cfg.stop_time = 1000.0;
  cfg.step_size = 1.0;
  cfg.output_interval = 1.0;
  cfg.seed = 42;
  cfg.instantiations_per_plan = 1;
  return cfg;
}

inline fmutest::scenario::ScenarioPlan load_step_plan() {
  static const fmutest::scenario::ConstraintSet cs = expected_loc_constraints();
  fmutest::scenario::ValidationContext ctx;
  ctx.constraints = &cs;
  ctx.window = fmutest::scenario::SimWindow{0.0, 1000.0};
  return fmutest::scenario::validate_plan_payload(nlohmann::json::parse(kLoadStepPlanText), ctx);
}

inline fmutest::signal::Scenario load_step_scenario() {
  fmutest::scenario::HashIndex index;
  auto res = fmutest::signal::instantiate(load_step_plan(), loc_sim_config(), index);
  return res.accepted.at(0);
}

}  // namespace fmutest_test

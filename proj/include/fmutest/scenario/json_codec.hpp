#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fmutest/scenario/types.hpp"

namespace fmutest::scenario {

using nlohmann::json;

json to_json(const IoConstraint& c);
json to_json(const ConstraintSet& cs);
json to_json(const ScenarioGoal& g);
json to_json(const ParamValue& p);
json to_json(const SignalSpace& s);
json to_json(const AssertionSpec& a);
json to_json(const ScenarioPlan& p);

// Structural decoders. Shape problems are appended to `reasons` and the
// returned value is then unspecified; callers check `reasons.empty()`.
IoConstraint parse_constraint(const json& j, std::vector<std::string>& reasons);
ConstraintSet parse_constraint_set(const json& j, std::vector<std::string>& reasons);
ScenarioGoal parse_goal(const json& j, std::vector<std::string>& reasons);
ParamValue parse_param_value(const json& j, const std::string& where,
                             std::vector<std::string>& reasons);
SignalSpace parse_signal(const json& j, const std::string& where,
                         std::vector<std::string>& reasons);
AssertionSpec parse_assertion(const json& j, const std::string& where,
                              std::vector<std::string>& reasons);
ScenarioPlan parse_plan(const json& j, std::vector<std::string>& reasons);

// Strict loaders for artifacts written by this library; throw Rejection.
ConstraintSet constraint_set_from_json(const json& j);
ScenarioGoal goal_from_json(const json& j);
ScenarioPlan plan_from_json(const json& j);
AssertionSpec assertion_from_json(const json& j);

}  // namespace fmutest::scenario

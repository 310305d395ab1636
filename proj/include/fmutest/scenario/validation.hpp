#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fmutest/model/model_description.hpp"
#include "fmutest/phase.hpp"
#include "fmutest/scenario/types.hpp"

namespace fmutest::scenario {

struct SimWindow {
  double start = 0.0;
  double stop = 0.0;
};

/// Whatever is known at validation time. Checks needing an absent piece of
/// context are skipped.
struct ValidationContext {
  const ConstraintSet* constraints = nullptr;
  const model::ModelDescription* model = nullptr;
  std::optional<SimWindow> window;
  /// Goals plans may refer to; when set, plans for other goals are rejected.
  const std::vector<ScenarioGoal>* goals = nullptr;
};

struct ItemRejection {
  std::size_t index = 0;
  std::vector<std::string> reasons;
};

using ValidatedValue =
    std::variant<ConstraintSet, std::vector<ScenarioGoal>, std::vector<ScenarioPlan>>;

struct ValidationOutcome {
  ValidatedValue value;
  std::vector<std::string> repairs;
  /// Items dropped from a goal/plan batch. A batch where every item is
  /// rejected throws Rejection instead.
  std::vector<ItemRejection> rejected;
};

/// The outermost balanced {...} of an LLM reply; surrounding prose and code
/// fences are ignored. Throws Rejection when no object is found.
std::string extract_json_object(std::string_view raw, bool* had_surrounding_text = nullptr);

/// Explicit alias table for assertion kinds seen in model output.
std::optional<std::string_view> normalize_kind_alias(std::string_view kind) noexcept;

/// Parses, repairs, and validates one LLM reply for the given phase.
ValidationOutcome validate_and_repair(std::string_view raw_text, Phase phase,
                                      const ValidationContext& ctx);

// Typed conveniences over validate_and_repair.
ConstraintSet validate_constraints(std::string_view raw_text, const ValidationContext& ctx,
                                   std::vector<std::string>* repairs = nullptr);

/// Single-record validation for review edits. Repairs are applied; any
/// remaining violation throws Rejection.
ScenarioGoal validate_goal_payload(const nlohmann::json& payload, const ValidationContext& ctx,
                                   std::vector<std::string>* repairs = nullptr);
ScenarioPlan validate_plan_payload(const nlohmann::json& payload, const ValidationContext& ctx,
                                   std::vector<std::string>* repairs = nullptr);

// Invariant checks on typed records; return human-readable violations.
std::vector<std::string> check_constraints(const ConstraintSet& cs, const ValidationContext& ctx);
std::vector<std::string> check_goal(const ScenarioGoal& goal, const ValidationContext& ctx);
std::vector<std::string> check_plan(const ScenarioPlan& plan, const ValidationContext& ctx);

/// Identifier-like tokens ([A-Za-z_][A-Za-z0-9_]*) of a prose string.
std::vector<std::string> identifier_tokens(std::string_view text);

}  // namespace fmutest::scenario

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fmutest/scenario/types.hpp"

namespace fmutest::scenario {

enum class ItemKind { Goal, Plan, Scenario };

std::string_view to_string(ItemKind k) noexcept;
std::optional<ItemKind> parse_item_kind(std::string_view text) noexcept;

std::string format_goal_id(int ordinal);                                 // G001
std::string format_plan_id(std::string_view goal_id, int ordinal);       // G001-P002
std::string format_test_id(std::string_view plan_id, int ordinal);       // G001-P002-T003

/// Trailing ordinal of an id ("G001-P002" -> 2), or nullopt when malformed.
std::optional<int> id_ordinal(std::string_view id) noexcept;

/// Numbers items with an empty id in arrival order, continuing after the
/// largest ordinal in `existing`. Items that already carry an id keep it.
void assign_ids(std::vector<ScenarioGoal>& goals, const std::vector<std::string>& existing);

/// Plans are numbered per goal: Gxxx-P001, Gxxx-P002, ...
void assign_ids(std::vector<ScenarioPlan>& plans, const std::vector<std::string>& existing);

}  // namespace fmutest::scenario

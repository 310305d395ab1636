#include "fmutest/scenario/ids.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

namespace fmutest::scenario {

std::string_view to_string(ItemKind k) noexcept {
  switch (k) {
    case ItemKind::Goal: return "goal";
    case ItemKind::Plan: return "plan";
    case ItemKind::Scenario: return "scenario";
  }
  return "goal";
}

std::optional<ItemKind> parse_item_kind(std::string_view text) noexcept {
  if (text == "goal") return ItemKind::Goal;
  if (text == "plan") return ItemKind::Plan;
  if (text == "scenario") return ItemKind::Scenario;
  return std::nullopt;
}

namespace {
std::string with_ordinal(std::string_view prefix, char tag, int ordinal) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%c%03d", tag, ordinal);
  std::string out(prefix);
  if (!out.empty()) out += '-';
  out += buf;
  return out;
}
}  // namespace

std::string format_goal_id(int ordinal) { return with_ordinal("", 'G', ordinal); }

std::string format_plan_id(std::string_view goal_id, int ordinal) {
  return with_ordinal(goal_id, 'P', ordinal);
}

std::string format_test_id(std::string_view plan_id, int ordinal) {
  return with_ordinal(plan_id, 'T', ordinal);
}

std::optional<int> id_ordinal(std::string_view id) noexcept {
  const auto dash = id.rfind('-');
  const std::string_view tail = dash == std::string_view::npos ? id : id.substr(dash + 1);
  if (tail.size() < 2) return std::nullopt;
  int value = 0;
  for (char c : tail.substr(1)) {
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
  }
  return value;
}

void assign_ids(std::vector<ScenarioGoal>& goals, const std::vector<std::string>& existing) {
  int next = 0;
  auto bump = [&next](std::string_view id) {
    if (auto n = id_ordinal(id)) next = std::max(next, *n);
  };
  for (const auto& id : existing) bump(id);
  for (const auto& g : goals) bump(g.id);
  for (auto& g : goals) {
    if (g.id.empty()) g.id = format_goal_id(++next);
  }
}

void assign_ids(std::vector<ScenarioPlan>& plans, const std::vector<std::string>& existing) {
  std::map<std::string, int> next;  // goal id -> highest plan ordinal
  auto bump = [&next](std::string_view plan_id) {
    if (plan_id.size() < 4) return;
    auto n = id_ordinal(plan_id);
    if (!n) return;
    auto& slot = next[std::string(plan_id.substr(0, plan_id.find('-')))];
    slot = std::max(slot, *n);
  };
  for (const auto& id : existing) bump(id);
  for (const auto& p : plans) bump(p.id);
  for (auto& p : plans) {
    if (p.id.empty()) p.id = format_plan_id(p.goal_id, ++next[p.goal_id]);
  }
}

}  // namespace fmutest::scenario

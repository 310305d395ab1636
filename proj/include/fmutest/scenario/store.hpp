#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fmutest/scenario/dedup.hpp"
#include "fmutest/scenario/types.hpp"
#include "fmutest/scenario/validation.hpp"

namespace fmutest::scenario {

enum class Decision { Accept, Reject, Edit };

std::optional<Decision> parse_decision(std::string_view text) noexcept;

template <class T>
struct AdmitReport {
  std::vector<T> accepted;
  std::vector<std::pair<T, std::string>> duplicates;
};

/// Goals and plans of one run plus the digest index, with the review state
/// machine: generated -> {accepted, rejected, edited}, decided exactly once.
/// Not thread-safe; callers serialize writers.
class ScenarioStore {
 public:
  explicit ScenarioStore(HashIndex index = {});

  void restore(std::vector<ScenarioGoal> goals, std::vector<ScenarioPlan> plans);

  /// Assigns ids and drops exact duplicates (within the batch, the run, and
  /// anything else recorded in the index), one item at a time so ids stay dense.
  AdmitReport<ScenarioGoal> admit_goals(std::vector<ScenarioGoal> candidates);

  /// Throws Error{StageGateViolation} if a plan's goal is not accepted/edited.
  AdmitReport<ScenarioPlan> admit_plans(std::vector<ScenarioPlan> candidates);

  /// Errors: UnknownItem, IllegalTransition, InvalidEdit.
  const ScenarioGoal& review_goal(const std::string& id, Decision decision,
                                  const nlohmann::json* payload, const ValidationContext& ctx);
  const ScenarioPlan& review_plan(const std::string& id, Decision decision,
                                  const nlohmann::json* payload, const ValidationContext& ctx);

  [[nodiscard]] const std::vector<ScenarioGoal>& goals() const noexcept { return goals_; }
  [[nodiscard]] const std::vector<ScenarioPlan>& plans() const noexcept { return plans_; }
  [[nodiscard]] const ScenarioGoal* find_goal(std::string_view id) const noexcept;
  [[nodiscard]] const ScenarioPlan* find_plan(std::string_view id) const noexcept;

  [[nodiscard]] std::vector<ScenarioGoal> eligible_goals() const;
  [[nodiscard]] std::vector<ScenarioPlan> eligible_plans() const;
  [[nodiscard]] bool all_goals_decided() const noexcept;
  [[nodiscard]] bool all_plans_decided() const noexcept;

  /// Store-wide scan: plans under ineligible goals. Empty when consistent.
  [[nodiscard]] std::vector<std::string> gating_violations() const;

  [[nodiscard]] HashIndex& index() noexcept { return index_; }
  [[nodiscard]] const HashIndex& index() const noexcept { return index_; }

 private:
  std::vector<std::string> known_ids(ItemKind kind) const;

  HashIndex index_;
  std::vector<ScenarioGoal> goals_;
  std::vector<ScenarioPlan> plans_;
};

}  // namespace fmutest::scenario

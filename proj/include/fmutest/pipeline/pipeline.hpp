#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fmutest/llm/gateway.hpp"
#include "fmutest/pipeline/run_config.hpp"
#include "fmutest/pipeline/run_store.hpp"
#include "fmutest/scenario/store.hpp"
#include "fmutest/scenario/types.hpp"

namespace fmutest::pipeline {

/// Stage orchestration over a RunStore. Mutations of one run are serialized
/// through the store's per-run lock; distinct runs proceed concurrently.
class Pipeline {
 public:
  /// `provider` replaces the configured one (tests, scripted capture).
  explicit Pipeline(RunStore& store, std::shared_ptr<llm::Provider> provider = nullptr);

  RunState create_run(const RunConfig& config, std::optional<std::string> run_id = std::nullopt);
  [[nodiscard]] RunState state(const std::string& run_id) const;
  [[nodiscard]] RunConfig config(const std::string& run_id) const;
  void update_config(const std::string& run_id, const RunConfig& config);

  /// Runs the work of `target` and persists the new stage. The previous stage
  /// must have been reached (`reported` also follows `executed`). Re-running
  /// the current stage is idempotent. Throws Error{StageGateViolation}.
  RunState advance(const std::string& run_id, Stage target);

  /// Advances stage by stage until `target` (review stages need decisions or
  /// auto_accept).
  RunState run_to(const std::string& run_id, Stage target);

  scenario::ScenarioGoal review_goal(const std::string& run_id, const std::string& goal_id,
                                     scenario::Decision decision,
                                     const nlohmann::json* payload = nullptr);
  scenario::ScenarioPlan review_plan(const std::string& run_id, const std::string& plan_id,
                                     scenario::Decision decision,
                                     const nlohmann::json* payload = nullptr);

  [[nodiscard]] std::vector<scenario::ScenarioGoal> goals(const std::string& run_id) const;
  [[nodiscard]] std::vector<scenario::ScenarioPlan> plans(const std::string& run_id) const;
  /// report.json plus result status per scenario.
  [[nodiscard]] nlohmann::json results(const std::string& run_id) const;
  /// Throws Error{UnknownItem} when no plot exists for test_id.
  [[nodiscard]] nlohmann::json plot(const std::string& run_id, const std::string& test_id) const;
  [[nodiscard]] nlohmann::json mutation(const std::string& run_id) const;

  [[nodiscard]] RunStore& store() noexcept { return store_; }

 private:
  struct Loaded;
  Loaded load(const std::string& run_id) const;
  void save_items(const std::string& run_id, const scenario::ScenarioStore& items) const;
  llm::LlmGateway gateway_for(const std::string& run_id, const RunConfig& cfg) const;

  void stage_constraints(const std::string& run_id);
  void stage_goals(const std::string& run_id);
  void stage_goals_reviewed(const std::string& run_id);
  void stage_plans(const std::string& run_id);
  void stage_plans_reviewed(const std::string& run_id);
  void stage_scenarios(const std::string& run_id);
  void stage_execute(const std::string& run_id);
  void stage_mutate(const std::string& run_id);
  void stage_report(const std::string& run_id);

  RunStore& store_;
  std::shared_ptr<llm::Provider> provider_;
};

}  // namespace fmutest::pipeline

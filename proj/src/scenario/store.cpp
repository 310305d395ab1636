#include "fmutest/scenario/store.hpp"

#include <algorithm>

#include "fmutest/error.hpp"
#include "fmutest/scenario/ids.hpp"

namespace fmutest::scenario {

std::optional<Decision> parse_decision(std::string_view text) noexcept {
  if (text == "accept") return Decision::Accept;
  if (text == "reject") return Decision::Reject;
  if (text == "edit") return Decision::Edit;
  return std::nullopt;
}

ScenarioStore::ScenarioStore(HashIndex index) : index_(std::move(index)) {}

void ScenarioStore::restore(std::vector<ScenarioGoal> goals, std::vector<ScenarioPlan> plans) {
  goals_ = std::move(goals);
  plans_ = std::move(plans);
}

std::vector<std::string> ScenarioStore::known_ids(ItemKind kind) const {
  std::vector<std::string> ids = index_.ids(kind);
  if (kind == ItemKind::Goal) {
    for (const auto& g : goals_) ids.push_back(g.id);
  } else {
    for (const auto& p : plans_) ids.push_back(p.id);
  }
  return ids;
}

AdmitReport<ScenarioGoal> ScenarioStore::admit_goals(std::vector<ScenarioGoal> candidates) {
  AdmitReport<ScenarioGoal> report;
  for (auto& candidate : candidates) {
    std::vector<ScenarioGoal> one{std::move(candidate)};
    assign_ids(one, known_ids(ItemKind::Goal));
    auto result = dedup(std::move(one), index_);
    for (auto& g : result.accepted) {
      goals_.push_back(g);
      report.accepted.push_back(std::move(g));
    }
    for (auto& d : result.duplicates) report.duplicates.push_back(std::move(d));
  }
  return report;
}

AdmitReport<ScenarioPlan> ScenarioStore::admit_plans(std::vector<ScenarioPlan> candidates) {
  for (const auto& p : candidates) {
    const ScenarioGoal* goal = find_goal(p.goal_id);
    if (goal == nullptr || !is_eligible(goal->review_status)) {
      throw Error(Errc::StageGateViolation,
                  "plan references goal '" + p.goal_id + "' which is not accepted");
    }
  }
  AdmitReport<ScenarioPlan> report;
  for (auto& candidate : candidates) {
    std::vector<ScenarioPlan> one{std::move(candidate)};
    assign_ids(one, known_ids(ItemKind::Plan));
    auto result = dedup(std::move(one), index_);
    for (auto& p : result.accepted) {
      plans_.push_back(p);
      report.accepted.push_back(std::move(p));
    }
    for (auto& d : result.duplicates) report.duplicates.push_back(std::move(d));
  }
  return report;
}

namespace {

template <class T>
T& find_or_throw(std::vector<T>& items, const std::string& id, const char* what) {
  auto it = std::find_if(items.begin(), items.end(), [&](const T& x) { return x.id == id; });
  if (it == items.end()) throw Error(Errc::UnknownItem, std::string("unknown ") + what + " " + id);
  return *it;
}

template <class T>
void require_undecided(const T& item) {
  if (item.review_status != ReviewStatus::Generated) {
    throw Error(Errc::IllegalTransition, item.id + " was already " +
                                             std::string(to_string(item.review_status)));
  }
}

template <class T>
void record_edit_digest(T& edited, HashIndex& index, ItemKind kind) {
  const std::string digest = canonical_digest(edited).hex64;
  if (auto other = index.find(kind, digest)) {
    if (*other != edited.id) {
      throw Error(Errc::InvalidEdit, "edit duplicates existing " +
                                         std::string(to_string(kind)) + " " + *other);
    }
    return;
  }
  index.append({digest, edited.id, kind});
}

}  // namespace

const ScenarioGoal& ScenarioStore::review_goal(const std::string& id, Decision decision,
                                               const nlohmann::json* payload,
                                               const ValidationContext& ctx) {
  ScenarioGoal& goal = find_or_throw(goals_, id, "goal");
  require_undecided(goal);
  switch (decision) {
    case Decision::Accept: goal.review_status = ReviewStatus::Accepted; break;
    case Decision::Reject: goal.review_status = ReviewStatus::Rejected; break;
    case Decision::Edit: {
      if (payload == nullptr) throw Error(Errc::InvalidEdit, "edit requires a payload");
      ScenarioGoal edited;
      try {
        edited = validate_goal_payload(*payload, ctx);
      } catch (const Rejection& r) {
        throw Error(Errc::InvalidEdit, r.what());
      }
      edited.id = goal.id;
      edited.review_status = ReviewStatus::Edited;
      record_edit_digest(edited, index_, ItemKind::Goal);
      goal = std::move(edited);
      break;
    }
  }
  return goal;
}

const ScenarioPlan& ScenarioStore::review_plan(const std::string& id, Decision decision,
                                               const nlohmann::json* payload,
                                               const ValidationContext& ctx) {
  ScenarioPlan& plan = find_or_throw(plans_, id, "plan");
  require_undecided(plan);
  switch (decision) {
    case Decision::Accept: plan.review_status = ReviewStatus::Accepted; break;
    case Decision::Reject: plan.review_status = ReviewStatus::Rejected; break;
    case Decision::Edit: {
      if (payload == nullptr) throw Error(Errc::InvalidEdit, "edit requires a payload");
      nlohmann::json body = *payload;
      if (body.is_object() && !body.contains("goal_id")) body["goal_id"] = plan.goal_id;
      ScenarioPlan edited;
      try {
        edited = validate_plan_payload(body, ctx);
      } catch (const Rejection& r) {
        throw Error(Errc::InvalidEdit, r.what());
      }
      if (edited.goal_id != plan.goal_id) {
        throw Error(Errc::InvalidEdit, "edit may not move " + plan.id + " to another goal");
      }
      edited.id = plan.id;
      edited.review_status = ReviewStatus::Edited;
      record_edit_digest(edited, index_, ItemKind::Plan);
      plan = std::move(edited);
      break;
    }
  }
  return plan;
}

const ScenarioGoal* ScenarioStore::find_goal(std::string_view id) const noexcept {
  for (const auto& g : goals_) {
    if (g.id == id) return &g;
  }
  return nullptr;
}

const ScenarioPlan* ScenarioStore::find_plan(std::string_view id) const noexcept {
  for (const auto& p : plans_) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

std::vector<ScenarioGoal> ScenarioStore::eligible_goals() const {
  std::vector<ScenarioGoal> out;
  std::copy_if(goals_.begin(), goals_.end(), std::back_inserter(out),
               [](const ScenarioGoal& g) { return is_eligible(g.review_status); });
  return out;
}

std::vector<ScenarioPlan> ScenarioStore::eligible_plans() const {
  std::vector<ScenarioPlan> out;
  for (const auto& p : plans_) {
    const ScenarioGoal* g = find_goal(p.goal_id);
    if (is_eligible(p.review_status) && g != nullptr && is_eligible(g->review_status)) {
      out.push_back(p);
    }
  }
  return out;
}

bool ScenarioStore::all_goals_decided() const noexcept {
  return std::none_of(goals_.begin(), goals_.end(), [](const ScenarioGoal& g) {
    return g.review_status == ReviewStatus::Generated;
  });
}

bool ScenarioStore::all_plans_decided() const noexcept {
  return std::none_of(plans_.begin(), plans_.end(), [](const ScenarioPlan& p) {
    return p.review_status == ReviewStatus::Generated;
  });
}

std::vector<std::string> ScenarioStore::gating_violations() const {
  std::vector<std::string> out;
  for (const auto& p : plans_) {
    const ScenarioGoal* g = find_goal(p.goal_id);
    if (g == nullptr) {
      out.push_back(p.id + " references missing goal " + p.goal_id);
    } else if (!is_eligible(g->review_status)) {
      out.push_back(p.id + " references " + std::string(to_string(g->review_status)) + " goal " +
                    g->id);
    }
  }
  return out;
}

}  // namespace fmutest::scenario

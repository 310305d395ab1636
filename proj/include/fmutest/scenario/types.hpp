#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fmutest::scenario {

enum class ReviewStatus { Generated, Accepted, Rejected, Edited };

std::string_view to_string(ReviewStatus s) noexcept;
std::optional<ReviewStatus> parse_review_status(std::string_view text) noexcept;

/// Accepted and edited items flow to the next stage.
[[nodiscard]] constexpr bool is_eligible(ReviewStatus s) noexcept {
  return s == ReviewStatus::Accepted || s == ReviewStatus::Edited;
}

/// Inputs whose name contains "setpoint" are held constant everywhere.
[[nodiscard]] bool is_setpoint(std::string_view name) noexcept;

struct IoConstraint {
  std::string name;
  std::optional<double> min;
  std::optional<double> max;
  std::optional<std::string> unit;

  friend bool operator==(const IoConstraint&, const IoConstraint&) = default;
};

struct ConstraintSet {
  std::vector<IoConstraint> inputs;
  std::vector<IoConstraint> outputs;

  [[nodiscard]] const IoConstraint* find_input(std::string_view name) const noexcept;
  [[nodiscard]] const IoConstraint* find_output(std::string_view name) const noexcept;
  [[nodiscard]] const IoConstraint* find(std::string_view name) const noexcept;

  friend bool operator==(const ConstraintSet&, const ConstraintSet&) = default;
};

struct ScenarioGoal {
  std::string id;
  std::string pattern = "Given-When-Then";
  std::string given;
  std::string when;
  std::vector<std::string> then;
  std::string goal_rationale;
  int target_count = 1;
  std::string target_count_rationale;
  ReviewStatus review_status = ReviewStatus::Generated;

  friend bool operator==(const ScenarioGoal&, const ScenarioGoal&) = default;
};

/// A literal or a [lo, hi] range. Scalars and single-element arrays are
/// degenerate ranges with lo == hi.
struct ParamValue {
  double lo = 0.0;
  double hi = 0.0;

  static ParamValue scalar(double v) noexcept { return {v, v}; }
  static ParamValue range(double lo, double hi) noexcept { return {lo, hi}; }
  [[nodiscard]] bool ranged() const noexcept { return lo < hi; }

  friend bool operator==(const ParamValue&, const ParamValue&) = default;
};

struct ConstantSignal {
  ParamValue value;
  friend bool operator==(const ConstantSignal&, const ConstantSignal&) = default;
};

struct StepSignal {
  ParamValue from;
  ParamValue to;
  ParamValue at;
  friend bool operator==(const StepSignal&, const StepSignal&) = default;
};

struct RampSignal {
  ParamValue start;
  ParamValue end;
  ParamValue duration;
  std::optional<ParamValue> at;  // defaults to the simulation start
  friend bool operator==(const RampSignal&, const RampSignal&) = default;
};

using SignalSpace = std::variant<ConstantSignal, StepSignal, RampSignal>;

std::string_view pattern_name(const SignalSpace& s) noexcept;

enum class AssertionKind {
  Bounded,
  CrossesAbove,
  CrossesBelow,
  MonotonicIncrease,
  MonotonicDecrease,
  SettlesTo,
};

std::string_view to_string(AssertionKind k) noexcept;
std::optional<AssertionKind> parse_assertion_kind(std::string_view text) noexcept;

struct BoundedAssertion {
  std::string var;
  double low = 0.0;
  double high = 0.0;
  std::optional<double> from_timestep;
  std::optional<double> to_timestep;
  friend bool operator==(const BoundedAssertion&, const BoundedAssertion&) = default;
};

struct CrossingAssertion {
  std::string var;
  bool above = true;
  double threshold = 0.0;
  double by_time = 0.0;
  friend bool operator==(const CrossingAssertion&, const CrossingAssertion&) = default;
};

struct MonotonicAssertion {
  std::string var;
  bool increasing = true;
  std::optional<double> from_timestep;
  std::optional<double> to_timestep;
  std::optional<double> eps;
  friend bool operator==(const MonotonicAssertion&, const MonotonicAssertion&) = default;
};

struct SettlesToAssertion {
  std::string var;
  std::optional<double> target;
  std::optional<std::string> target_var;
  double tol = 0.0;
  double within = 0.0;
  friend bool operator==(const SettlesToAssertion&, const SettlesToAssertion&) = default;
};

using AssertionSpec =
    std::variant<BoundedAssertion, CrossingAssertion, MonotonicAssertion, SettlesToAssertion>;

AssertionKind kind_of(const AssertionSpec& a) noexcept;
const std::string& var_of(const AssertionSpec& a) noexcept;

enum class PlanType { Positive, Boundary };

std::string_view to_string(PlanType t) noexcept;
std::optional<PlanType> parse_plan_type(std::string_view text) noexcept;

struct ScenarioPlan {
  std::string id;
  std::string goal_id;
  PlanType type = PlanType::Positive;
  std::map<std::string, SignalSpace> param_space;
  std::vector<AssertionSpec> assertions;
  ReviewStatus review_status = ReviewStatus::Generated;

  friend bool operator==(const ScenarioPlan&, const ScenarioPlan&) = default;
};

}  // namespace fmutest::scenario

#include "fmutest/scenario/types.hpp"

namespace fmutest::scenario {

std::string_view to_string(ReviewStatus s) noexcept {
  switch (s) {
    case ReviewStatus::Generated: return "generated";
    case ReviewStatus::Accepted: return "accepted";
    case ReviewStatus::Rejected: return "rejected";
    case ReviewStatus::Edited: return "edited";
  }
  return "generated";
}

std::optional<ReviewStatus> parse_review_status(std::string_view text) noexcept {
  if (text == "generated") return ReviewStatus::Generated;
  if (text == "accepted") return ReviewStatus::Accepted;
  if (text == "rejected") return ReviewStatus::Rejected;
  if (text == "edited") return ReviewStatus::Edited;
  return std::nullopt;
}

bool is_setpoint(std::string_view name) noexcept {
  return name.find("setpoint") != std::string_view::npos;
}

namespace {
const IoConstraint* find_in(const std::vector<IoConstraint>& list, std::string_view name) {
  for (const auto& c : list) {
    if (c.name == name) return &c;
  }
  return nullptr;
}
}  // namespace

const IoConstraint* ConstraintSet::find_input(std::string_view name) const noexcept {
  return find_in(inputs, name);
}

const IoConstraint* ConstraintSet::find_output(std::string_view name) const noexcept {
  return find_in(outputs, name);
}

const IoConstraint* ConstraintSet::find(std::string_view name) const noexcept {
  if (const auto* c = find_input(name)) return c;
  return find_output(name);
}

std::string_view pattern_name(const SignalSpace& s) noexcept {
  switch (s.index()) {
    case 0: return "constant";
    case 1: return "step";
    default: return "ramp";
  }
}

std::string_view to_string(AssertionKind k) noexcept {
  switch (k) {
    case AssertionKind::Bounded: return "bounded";
    case AssertionKind::CrossesAbove: return "crosses_above";
    case AssertionKind::CrossesBelow: return "crosses_below";
    case AssertionKind::MonotonicIncrease: return "monotonic_increase";
    case AssertionKind::MonotonicDecrease: return "monotonic_decrease";
    case AssertionKind::SettlesTo: return "settles_to";
  }
  return "bounded";
}

std::optional<AssertionKind> parse_assertion_kind(std::string_view text) noexcept {
  for (auto k : {AssertionKind::Bounded, AssertionKind::CrossesAbove, AssertionKind::CrossesBelow,
                 AssertionKind::MonotonicIncrease, AssertionKind::MonotonicDecrease,
                 AssertionKind::SettlesTo}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

AssertionKind kind_of(const AssertionSpec& a) noexcept {
  struct Visitor {
    AssertionKind operator()(const BoundedAssertion&) const { return AssertionKind::Bounded; }
    AssertionKind operator()(const CrossingAssertion& c) const {
      return c.above ? AssertionKind::CrossesAbove : AssertionKind::CrossesBelow;
    }
    AssertionKind operator()(const MonotonicAssertion& m) const {
      return m.increasing ? AssertionKind::MonotonicIncrease : AssertionKind::MonotonicDecrease;
    }
    AssertionKind operator()(const SettlesToAssertion&) const { return AssertionKind::SettlesTo; }
  };
  return std::visit(Visitor{}, a);
}

const std::string& var_of(const AssertionSpec& a) noexcept {
  return std::visit([](const auto& x) -> const std::string& { return x.var; }, a);
}

std::string_view to_string(PlanType t) noexcept {
  return t == PlanType::Boundary ? "boundary" : "positive";
}

std::optional<PlanType> parse_plan_type(std::string_view text) noexcept {
  if (text == "positive") return PlanType::Positive;
  if (text == "boundary") return PlanType::Boundary;
  return std::nullopt;
}

}  // namespace fmutest::scenario

#include "fmutest/scenario/json_codec.hpp"

#include <cmath>

#include "fmutest/error.hpp"

namespace fmutest::scenario {

namespace {

json opt_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json opt_string(const std::optional<std::string>& v) { return v ? json(*v) : json(nullptr); }

const json* member(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

std::string get_string(const json& j, const char* key, const std::string& where,
                       std::vector<std::string>& reasons, bool required = true) {
  const json* v = member(j, key);
  if (v == nullptr || v->is_null()) {
    if (required) reasons.push_back(where + ": missing required field '" + key + "'");
    return {};
  }
  if (!v->is_string()) {
    reasons.push_back(where + ": field '" + key + "' must be a string");
    return {};
  }
  return v->get<std::string>();
}

std::optional<double> get_opt_number(const json& j, const char* key, const std::string& where,
                                     std::vector<std::string>& reasons) {
  const json* v = member(j, key);
  if (v == nullptr || v->is_null()) return std::nullopt;
  if (!v->is_number()) {
    reasons.push_back(where + ": field '" + key + "' must be a number");
    return std::nullopt;
  }
  const double d = v->get<double>();
  if (!std::isfinite(d)) {
    reasons.push_back(where + ": field '" + key + "' must be finite");
    return std::nullopt;
  }
  return d;
}

double get_number(const json& j, const char* key, const std::string& where,
                  std::vector<std::string>& reasons) {
  const json* v = member(j, key);
  if (v == nullptr || v->is_null()) {
    reasons.push_back(where + ": missing required field '" + key + "'");
    return 0.0;
  }
  return get_opt_number(j, key, where, reasons).value_or(0.0);
}

ParamValue get_param(const json& j, const char* key, const std::string& where,
                     std::vector<std::string>& reasons) {
  const json* v = member(j, key);
  if (v == nullptr || v->is_null()) {
    reasons.push_back(where + ": missing required field '" + key + "'");
    return {};
  }
  return parse_param_value(*v, where + "." + key, reasons);
}

bool is_plan_id(const std::string& id) {
  // Gxxx-Pyyy
  if (id.size() != 9 || id[0] != 'G' || id[4] != '-' || id[5] != 'P') return false;
  for (std::size_t i : {1u, 2u, 3u, 6u, 7u, 8u}) {
    if (id[i] < '0' || id[i] > '9') return false;
  }
  return true;
}

void require_object(const json& j, const std::string& where, std::vector<std::string>& reasons) {
  if (!j.is_object()) reasons.push_back(where + ": expected a JSON object");
}

template <class T>
T strict(T (*parse)(const json&, std::vector<std::string>&), const json& j) {
  std::vector<std::string> reasons;
  T value = parse(j, reasons);
  if (!reasons.empty()) throw Rejection(std::move(reasons));
  return value;
}

}  // namespace

json to_json(const IoConstraint& c) {
  return json{{"name", c.name}, {"min", opt_number(c.min)}, {"max", opt_number(c.max)},
              {"unit", opt_string(c.unit)}};
}

json to_json(const ConstraintSet& cs) {
  json inputs = json::array();
  for (const auto& c : cs.inputs) inputs.push_back(to_json(c));
  json outputs = json::array();
  for (const auto& c : cs.outputs) outputs.push_back(to_json(c));
  return json{{"inputs", std::move(inputs)}, {"outputs", std::move(outputs)}};
}

json to_json(const ScenarioGoal& g) {
  return json{{"id", g.id},
              {"pattern", g.pattern},
              {"given", g.given},
              {"when", g.when},
              {"then", g.then},
              {"goal_rationale", g.goal_rationale},
              {"target_count", g.target_count},
              {"target_count_rationale", g.target_count_rationale},
              {"review_status", std::string(to_string(g.review_status))}};
}

json to_json(const ParamValue& p) {
  if (!p.ranged()) return json(p.lo);
  return json::array({p.lo, p.hi});
}

json to_json(const SignalSpace& s) {
  struct Visitor {
    json operator()(const ConstantSignal& c) const {
      return json{{"pattern", "constant"}, {"value", to_json(c.value)}};
    }
    json operator()(const StepSignal& st) const {
      return json{{"pattern", "step"},
                  {"from", to_json(st.from)},
                  {"to", to_json(st.to)},
                  {"at", to_json(st.at)}};
    }
    json operator()(const RampSignal& r) const {
      json j{{"pattern", "ramp"},
             {"start", to_json(r.start)},
             {"end", to_json(r.end)},
             {"duration", to_json(r.duration)}};
      if (r.at) j["at"] = to_json(*r.at);
      return j;
    }
  };
  return std::visit(Visitor{}, s);
}

json to_json(const AssertionSpec& a) {
  json j{{"kind", std::string(to_string(kind_of(a)))}, {"var", var_of(a)}};
  std::visit(
      [&j](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, BoundedAssertion>) {
          j["low"] = x.low;
          j["high"] = x.high;
          if (x.from_timestep) j["from_timestep"] = *x.from_timestep;
          if (x.to_timestep) j["to_timestep"] = *x.to_timestep;
        } else if constexpr (std::is_same_v<T, CrossingAssertion>) {
          j["threshold"] = x.threshold;
          j["by_time"] = x.by_time;
        } else if constexpr (std::is_same_v<T, MonotonicAssertion>) {
          if (x.from_timestep) j["from_timestep"] = *x.from_timestep;
          if (x.to_timestep) j["to_timestep"] = *x.to_timestep;
          if (x.eps) j["eps"] = *x.eps;
        } else {
          if (x.target) j["target"] = *x.target;
          if (x.target_var) j["target_var"] = *x.target_var;
          j["tol"] = x.tol;
          j["within"] = x.within;
        }
      },
      a);
  return j;
}

json to_json(const ScenarioPlan& p) {
  json space = json::object();
  for (const auto& [name, sig] : p.param_space) space[name] = to_json(sig);
  json assertions = json::array();
  for (const auto& a : p.assertions) assertions.push_back(to_json(a));
  return json{{"id", p.id},
              {"goal_id", p.goal_id},
              {"type", std::string(to_string(p.type))},
              {"param_space", std::move(space)},
              {"assertions", std::move(assertions)},
              {"review_status", std::string(to_string(p.review_status))}};
}

IoConstraint parse_constraint(const json& j, std::vector<std::string>& reasons) {
  IoConstraint c;
  require_object(j, "constraint", reasons);
  if (!j.is_object()) return c;
  c.name = get_string(j, "name", "constraint", reasons);
  const std::string where = "constraint '" + c.name + "'";
  c.min = get_opt_number(j, "min", where, reasons);
  c.max = get_opt_number(j, "max", where, reasons);
  if (const json* u = member(j, "unit"); u != nullptr && !u->is_null()) {
    if (u->is_string()) {
      c.unit = u->get<std::string>();
    } else {
      reasons.push_back(where + ": field 'unit' must be a string or null");
    }
  }
  return c;
}

ConstraintSet parse_constraint_set(const json& j, std::vector<std::string>& reasons) {
  ConstraintSet cs;
  require_object(j, "constraints", reasons);
  if (!j.is_object()) return cs;
  for (const char* side : {"inputs", "outputs"}) {
    const json* list = member(j, side);
    if (list == nullptr || !list->is_array()) {
      reasons.push_back(std::string("constraints: '") + side + "' must be an array");
      continue;
    }
    auto& dest = std::string_view(side) == "inputs" ? cs.inputs : cs.outputs;
    for (const auto& item : *list) dest.push_back(parse_constraint(item, reasons));
  }
  return cs;
}

ScenarioGoal parse_goal(const json& j, std::vector<std::string>& reasons) {
  ScenarioGoal g;
  require_object(j, "goal", reasons);
  if (!j.is_object()) return g;
  g.id = get_string(j, "id", "goal", reasons, false);
  const std::string where = g.id.empty() ? std::string("goal") : "goal " + g.id;
  g.pattern = get_string(j, "pattern", where, reasons);
  g.given = get_string(j, "given", where, reasons);
  g.when = get_string(j, "when", where, reasons);
  if (const json* then = member(j, "then"); then != nullptr && then->is_array()) {
    for (const auto& item : *then) {
      if (item.is_string()) {
        g.then.push_back(item.get<std::string>());
      } else {
        reasons.push_back(where + ": 'then' items must be strings");
      }
    }
  } else {
    reasons.push_back(where + ": 'then' must be an array of strings");
  }
  g.goal_rationale = get_string(j, "goal_rationale", where, reasons);
  const double count = get_number(j, "target_count", where, reasons);
  if (count != std::floor(count) || count < 1 || count > 1000) {
    reasons.push_back(where + ": 'target_count' must be a positive integer");
  } else {
    g.target_count = static_cast<int>(count);
  }
  g.target_count_rationale = get_string(j, "target_count_rationale", where, reasons);
  if (const json* st = member(j, "review_status"); st != nullptr && st->is_string()) {
    if (auto s = parse_review_status(st->get<std::string>())) {
      g.review_status = *s;
    } else {
      reasons.push_back(where + ": unknown review_status");
    }
  }
  return g;
}

ParamValue parse_param_value(const json& j, const std::string& where,
                             std::vector<std::string>& reasons) {
  if (j.is_number()) return ParamValue::scalar(j.get<double>());
  if (j.is_array() && (j.size() == 1 || j.size() == 2)) {
    for (const auto& x : j) {
      if (!x.is_number()) {
        reasons.push_back(where + ": range entries must be numbers");
        return {};
      }
    }
    const double lo = j.front().get<double>();
    const double hi = j.back().get<double>();
    if (lo > hi) {
      reasons.push_back(where + ": inverted range");
      return {};
    }
    return ParamValue::range(lo, hi);
  }
  reasons.push_back(where + ": expected a number or [min,max]");
  return {};
}

SignalSpace parse_signal(const json& j, const std::string& where,
                         std::vector<std::string>& reasons) {
  require_object(j, where, reasons);
  if (!j.is_object()) return ConstantSignal{};
  const std::string pattern = get_string(j, "pattern", where, reasons);
  if (pattern == "constant") return ConstantSignal{get_param(j, "value", where, reasons)};
  if (pattern == "step") {
    return StepSignal{get_param(j, "from", where, reasons), get_param(j, "to", where, reasons),
                      get_param(j, "at", where, reasons)};
  }
  if (pattern == "ramp") {
    RampSignal r{get_param(j, "start", where, reasons), get_param(j, "end", where, reasons),
                 get_param(j, "duration", where, reasons), std::nullopt};
    if (const json* at = member(j, "at"); at != nullptr && !at->is_null()) {
      r.at = parse_param_value(*at, where + ".at", reasons);
    }
    return r;
  }
  if (!pattern.empty()) reasons.push_back(where + ": unknown pattern '" + pattern + "'");
  return ConstantSignal{};
}

AssertionSpec parse_assertion(const json& j, const std::string& where,
                              std::vector<std::string>& reasons) {
  require_object(j, where, reasons);
  if (!j.is_object()) return BoundedAssertion{};
  const std::string kind_text = get_string(j, "kind", where, reasons);
  const std::string var = get_string(j, "var", where, reasons);
  const auto kind = parse_assertion_kind(kind_text);
  BoundedAssertion fallback;
  fallback.var = var;
  if (!kind) {
    if (!kind_text.empty()) reasons.push_back(where + ": unknown kind '" + kind_text + "'");
    return fallback;
  }
  switch (*kind) {
    case AssertionKind::Bounded:
      return BoundedAssertion{var, get_number(j, "low", where, reasons),
                              get_number(j, "high", where, reasons),
                              get_opt_number(j, "from_timestep", where, reasons),
                              get_opt_number(j, "to_timestep", where, reasons)};
    case AssertionKind::CrossesAbove:
    case AssertionKind::CrossesBelow:
      return CrossingAssertion{var, *kind == AssertionKind::CrossesAbove,
                               get_number(j, "threshold", where, reasons),
                               get_number(j, "by_time", where, reasons)};
    case AssertionKind::MonotonicIncrease:
    case AssertionKind::MonotonicDecrease:
      return MonotonicAssertion{var, *kind == AssertionKind::MonotonicIncrease,
                                get_opt_number(j, "from_timestep", where, reasons),
                                get_opt_number(j, "to_timestep", where, reasons),
                                get_opt_number(j, "eps", where, reasons)};
    case AssertionKind::SettlesTo: {
      SettlesToAssertion s;
      s.var = var;
      s.target = get_opt_number(j, "target", where, reasons);
      if (const json* tv = member(j, "target_var"); tv != nullptr && !tv->is_null()) {
        if (tv->is_string()) {
          s.target_var = tv->get<std::string>();
        } else {
          reasons.push_back(where + ": 'target_var' must be a string");
        }
      }
      s.tol = get_number(j, "tol", where, reasons);
      s.within = get_number(j, "within", where, reasons);
      return s;
    }
  }
  return fallback;
}

ScenarioPlan parse_plan(const json& j, std::vector<std::string>& reasons) {
  ScenarioPlan p;
  require_object(j, "plan", reasons);
  if (!j.is_object()) return p;
  p.id = get_string(j, "id", "plan", reasons, false);
  p.goal_id = get_string(j, "goal_id", "plan", reasons, false);
  if (p.goal_id.empty() && is_plan_id(p.id)) p.goal_id = p.id.substr(0, 4);
  const std::string where = p.id.empty() ? "plan for " + p.goal_id : "plan " + p.id;
  if (p.goal_id.empty()) reasons.push_back(where + ": missing required field 'goal_id'");
  if (const json* t = member(j, "type"); t != nullptr && !t->is_null()) {
    if (auto type = t->is_string() ? parse_plan_type(t->get<std::string>()) : std::nullopt) {
      p.type = *type;
    } else {
      reasons.push_back(where + ": 'type' must be \"positive\" or \"boundary\"");
    }
  }
  if (const json* space = member(j, "param_space"); space != nullptr && space->is_object()) {
    for (const auto& [name, sig] : space->items()) {
      p.param_space.emplace(name, parse_signal(sig, where + " param_space." + name, reasons));
    }
  } else {
    reasons.push_back(where + ": 'param_space' must be an object");
  }
  if (const json* list = member(j, "assertions"); list != nullptr && list->is_array()) {
    for (std::size_t i = 0; i < list->size(); ++i) {
      p.assertions.push_back(
          parse_assertion((*list)[i], where + " assertions[" + std::to_string(i) + "]", reasons));
    }
  } else {
    reasons.push_back(where + ": 'assertions' must be an array");
  }
  if (const json* st = member(j, "review_status"); st != nullptr && st->is_string()) {
    if (auto s = parse_review_status(st->get<std::string>())) {
      p.review_status = *s;
    } else {
      reasons.push_back(where + ": unknown review_status");
    }
  }
  return p;
}

ConstraintSet constraint_set_from_json(const json& j) { return strict(&parse_constraint_set, j); }
ScenarioGoal goal_from_json(const json& j) { return strict(&parse_goal, j); }
ScenarioPlan plan_from_json(const json& j) { return strict(&parse_plan, j); }

AssertionSpec assertion_from_json(const json& j) {
  std::vector<std::string> reasons;
  AssertionSpec a = parse_assertion(j, "assertion", reasons);
  if (!reasons.empty()) throw Rejection(std::move(reasons));
  return a;
}

}  // namespace fmutest::scenario

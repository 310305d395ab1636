#include "fmutest/scenario/validation.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>

#include "fmutest/error.hpp"
#include "fmutest/format.hpp"
#include "fmutest/scenario/json_codec.hpp"

namespace fmutest::scenario {

using nlohmann::json;

namespace {

// ---- repair pass -----------------------------------------------------------

class Repairer {
 public:
  explicit Repairer(std::vector<std::string>& notes) : notes_(notes) {}

  void drop_unknown(json& obj, std::initializer_list<std::string_view> known,
                    const std::string& where) {
    std::vector<std::string> drop;
    for (const auto& [key, _] : obj.items()) {
      if (std::find(known.begin(), known.end(), key) == known.end()) drop.push_back(key);
    }
    for (const auto& key : drop) {
      obj.erase(key);
      notes_.push_back(where + ": dropped unrecognized field '" + key + "'");
    }
  }

  void note(std::string text) { notes_.push_back(std::move(text)); }

  void insert_null(json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) {
      obj[key] = nullptr;
      notes_.push_back(where + ": inserted null for missing '" + key + "'");
    }
  }

  /// Numeric strings ("0.5", " 42 ") become numbers; arrays are walked.
  void coerce_number(json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    coerce_value(*it, where + "." + key);
  }

  void coerce_value(json& v, const std::string& where) {
    if (v.is_array()) {
      for (auto& x : v) coerce_value(x, where);
      return;
    }
    if (!v.is_string()) return;
    const std::string text = v.get<std::string>();
    const char* begin = text.c_str();
    while (std::isspace(static_cast<unsigned char>(*begin))) ++begin;
    if (*begin == '\0') return;
    char* end = nullptr;
    const double d = std::strtod(begin, &end);
    while (std::isspace(static_cast<unsigned char>(*end))) ++end;
    if (end == begin || *end != '\0' || !std::isfinite(d)) return;
    v = d;
    notes_.push_back(where + ": coerced numeric string \"" + text + "\" to " + format_real(d));
  }

 private:
  std::vector<std::string>& notes_;
};

void repair_constraint_set(json& root, Repairer& r) {
  r.drop_unknown(root, {"inputs", "outputs"}, "constraints");
  for (const char* side : {"inputs", "outputs"}) {
    auto it = root.find(side);
    if (it == root.end() || !it->is_array()) continue;
    for (auto& item : *it) {
      if (!item.is_object()) continue;
      const std::string where = std::string(side) + " '" + item.value("name", std::string("?")) + "'";
      r.drop_unknown(item, {"name", "min", "max", "unit"}, where);
      r.insert_null(item, "min", where);
      r.insert_null(item, "max", where);
      r.insert_null(item, "unit", where);
      r.coerce_number(item, "min", where);
      r.coerce_number(item, "max", where);
    }
  }
}

void repair_goal(json& goal, Repairer& r, const std::string& where) {
  if (!goal.is_object()) return;
  r.drop_unknown(goal,
                 {"id", "pattern", "given", "when", "then", "goal_rationale", "target_count",
                  "target_count_rationale", "review_status"},
                 where);
  r.coerce_number(goal, "target_count", where);
}

void repair_signal(json& sig, Repairer& r, const std::string& where) {
  if (!sig.is_object()) return;
  const std::string pattern = sig.value("pattern", std::string());
  if (pattern == "constant") {
    r.drop_unknown(sig, {"pattern", "value"}, where);
    r.coerce_number(sig, "value", where);
  } else if (pattern == "step") {
    r.drop_unknown(sig, {"pattern", "from", "to", "at"}, where);
    for (const char* k : {"from", "to", "at"}) r.coerce_number(sig, k, where);
  } else if (pattern == "ramp") {
    r.drop_unknown(sig, {"pattern", "start", "end", "duration", "at"}, where);
    for (const char* k : {"start", "end", "duration", "at"}) r.coerce_number(sig, k, where);
  }
}

void repair_assertion(json& a, Repairer& r, const std::string& where) {
  if (!a.is_object()) return;
  if (auto it = a.find("kind"); it != a.end() && it->is_string()) {
    const std::string kind = it->get<std::string>();
    if (auto canonical = normalize_kind_alias(kind)) {
      *it = std::string(*canonical);
      r.note(where + ": normalized kind alias '" + kind + "' to '" + std::string(*canonical) + "'");
    }
  }
  const std::string kind = a.value("kind", std::string());
  const auto parsed = parse_assertion_kind(kind);
  if (!parsed) return;
  switch (*parsed) {
    case AssertionKind::Bounded:
      r.drop_unknown(a, {"kind", "var", "low", "high", "from_timestep", "to_timestep"}, where);
      for (const char* k : {"low", "high", "from_timestep", "to_timestep"}) {
        r.coerce_number(a, k, where);
      }
      break;
    case AssertionKind::CrossesAbove:
    case AssertionKind::CrossesBelow:
      r.drop_unknown(a, {"kind", "var", "threshold", "by_time"}, where);
      for (const char* k : {"threshold", "by_time"}) r.coerce_number(a, k, where);
      break;
    case AssertionKind::MonotonicIncrease:
    case AssertionKind::MonotonicDecrease:
      r.drop_unknown(a, {"kind", "var", "from_timestep", "to_timestep", "eps"}, where);
      for (const char* k : {"from_timestep", "to_timestep", "eps"}) r.coerce_number(a, k, where);
      break;
    case AssertionKind::SettlesTo:
      r.drop_unknown(a, {"kind", "var", "target", "target_var", "tol", "within"}, where);
      for (const char* k : {"target", "tol", "within"}) r.coerce_number(a, k, where);
      break;
  }
}

void repair_plan(json& plan, Repairer& r, const std::string& where) {
  if (!plan.is_object()) return;
  r.drop_unknown(plan, {"id", "goal_id", "type", "param_space", "assertions", "review_status"},
                 where);
  if (auto it = plan.find("param_space"); it != plan.end() && it->is_object()) {
    for (auto& [name, sig] : it->items()) repair_signal(sig, r, where + " param_space." + name);
  }
  if (auto it = plan.find("assertions"); it != plan.end() && it->is_array()) {
    for (std::size_t i = 0; i < it->size(); ++i) {
      repair_assertion((*it)[i], r, where + " assertions[" + std::to_string(i) + "]");
    }
  }
}

/// Splits the reply into per-item JSON, accepting both the {"<key>": [...]}
/// envelope and a bare item object.
std::vector<json> unwrap_batch(json root, const char* key, const char* marker, Repairer& r) {
  if (root.is_array()) return root.get<std::vector<json>>();
  if (root.is_object() && root.contains(key)) {
    r.drop_unknown(root, {key}, std::string(key) + " envelope");
    if (!root[key].is_array()) {
      throw Rejection({std::string("'") + key + "' must be an array"});
    }
    return root[key].get<std::vector<json>>();
  }
  if (root.is_object() && root.contains(marker)) return {std::move(root)};
  throw Rejection({std::string("reply has neither a '") + key + "' array nor a single item"});
}

// ---- invariant helpers -----------------------------------------------------

bool is_variable_token(const std::string& token) {
  return token.find('_') != std::string::npos && token.front() != '_' && token.back() != '_';
}

bool known_name(const std::string& name, const ValidationContext& ctx) {
  if (ctx.constraints && ctx.constraints->find(name)) return true;
  if (ctx.model && ctx.model->find(name)) return true;
  return false;
}

bool has_name_context(const ValidationContext& ctx) {
  return ctx.constraints != nullptr || ctx.model != nullptr;
}

std::string strip_identifiers(std::string_view text) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isalpha(c) || c == '_') {
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        ++i;
      }
      out += ' ';
    } else {
      out += text[i++];
    }
  }
  return out;
}

bool contains_digit(std::string_view text) {
  return std::any_of(text.begin(), text.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

void check_prose(const std::string& field, const std::string& text, const ValidationContext& ctx,
                 const std::string& where, std::vector<std::string>& out) {
  if (contains_digit(strip_identifiers(text))) {
    out.push_back(where + ": numbers are not allowed in '" + field + "'");
  }
  if (!has_name_context(ctx)) return;
  for (const auto& token : identifier_tokens(text)) {
    if (is_variable_token(token) && !known_name(token, ctx)) {
      out.push_back(where + ": unknown variable '" + token + "' in '" + field + "'");
    }
  }
}

void check_value_bounds(const ParamValue& v, const IoConstraint* c, const std::string& where,
                        std::vector<std::string>& out) {
  if (v.lo > v.hi) out.push_back(where + ": inverted range");
  if (c == nullptr) return;
  if ((c->min && v.lo < *c->min) || (c->max && v.hi > *c->max)) {
    out.push_back(where + ": value " + format_real(v.lo) +
                  (v.ranged() ? ".." + format_real(v.hi) : std::string()) +
                  " outside bounds of " + c->name);
  }
}

void check_time(const ParamValue& t, const ValidationContext& ctx, const std::string& where,
                std::vector<std::string>& out) {
  if (!ctx.window) return;
  if (t.lo < ctx.window->start || t.hi > ctx.window->stop) {
    out.push_back(where + ": time outside simulation window [" + format_real(ctx.window->start) +
                  ", " + format_real(ctx.window->stop) + "]");
  }
}

void check_time(double t, const ValidationContext& ctx, const std::string& where,
                std::vector<std::string>& out) {
  check_time(ParamValue::scalar(t), ctx, where, out);
}

void check_signal(const std::string& name, const SignalSpace& sig, const ValidationContext& ctx,
                  const std::string& where, std::vector<std::string>& out) {
  const IoConstraint* c = ctx.constraints ? ctx.constraints->find_input(name) : nullptr;
  if (is_setpoint(name) && !std::holds_alternative<ConstantSignal>(sig)) {
    out.push_back(where + ": setpoint driven (" + name + " must be constant)");
  }
  if (const auto* k = std::get_if<ConstantSignal>(&sig)) {
    check_value_bounds(k->value, c, where + ".value", out);
  } else if (const auto* s = std::get_if<StepSignal>(&sig)) {
    check_value_bounds(s->from, c, where + ".from", out);
    check_value_bounds(s->to, c, where + ".to", out);
    check_time(s->at, ctx, where + ".at", out);
  } else if (const auto* r = std::get_if<RampSignal>(&sig)) {
    check_value_bounds(r->start, c, where + ".start", out);
    check_value_bounds(r->end, c, where + ".end", out);
    if (r->duration.lo < 0) out.push_back(where + ".duration: negative duration");
    if (r->at) check_time(*r->at, ctx, where + ".at", out);
    if (ctx.window) {
      const double begin = r->at ? r->at->hi : ctx.window->start;
      if (r->duration.hi > ctx.window->stop - ctx.window->start ||
          begin + r->duration.hi > ctx.window->stop) {
        out.push_back(where + ".duration: ramp ends after the simulation window");
      }
    }
  }
}

void check_assertion(const AssertionSpec& a, const ValidationContext& ctx,
                     const std::string& where, std::vector<std::string>& out) {
  const std::string& var = var_of(a);
  if (ctx.constraints && !ctx.constraints->find_output(var)) {
    out.push_back(where + ": '" + var + "' is not an output variable");
  }
  auto window_pair = [&](const std::optional<double>& from, const std::optional<double>& to) {
    if (from) check_time(*from, ctx, where + ".from_timestep", out);
    if (to) check_time(*to, ctx, where + ".to_timestep", out);
    if (from && to && *from > *to) out.push_back(where + ": from_timestep after to_timestep");
  };
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, BoundedAssertion>) {
          if (x.low > x.high) out.push_back(where + ": low > high");
          window_pair(x.from_timestep, x.to_timestep);
        } else if constexpr (std::is_same_v<T, CrossingAssertion>) {
          check_time(x.by_time, ctx, where + ".by_time", out);
        } else if constexpr (std::is_same_v<T, MonotonicAssertion>) {
          if (x.eps && *x.eps < 0) out.push_back(where + ": eps must be >= 0");
          window_pair(x.from_timestep, x.to_timestep);
        } else {
          if (x.target.has_value() == x.target_var.has_value()) {
            out.push_back(where + ": settles_to needs exactly one of target / target_var");
          }
          if (x.target_var) {
            if (!is_setpoint(*x.target_var)) {
              out.push_back(where + ": target_var '" + *x.target_var + "' is not a setpoint input");
            } else if (ctx.constraints && !ctx.constraints->find_input(*x.target_var)) {
              out.push_back(where + ": target_var '" + *x.target_var + "' is not an input");
            }
          }
          if (!(x.tol > 0)) out.push_back(where + ": tol must be > 0");
          check_time(x.within, ctx, where + ".within", out);
        }
      },
      a);
}

const ScenarioGoal* find_goal(const ValidationContext& ctx, const std::string& id) {
  if (ctx.goals == nullptr) return nullptr;
  for (const auto& g : *ctx.goals) {
    if (g.id == id) return &g;
  }
  return nullptr;
}

template <class T>
std::vector<T> validate_batch(std::vector<json> items, const char* what,
                              T (*parse)(const json&, std::vector<std::string>&),
                              std::vector<std::string> (*check)(const T&,
                                                                const ValidationContext&),
                              const ValidationContext& ctx, ValidationOutcome& outcome) {
  std::vector<T> accepted;
  std::vector<std::string> all_reasons;
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::vector<std::string> reasons;
    T value = parse(items[i], reasons);
    if (reasons.empty()) reasons = check(value, ctx);
    if (reasons.empty()) {
      accepted.push_back(std::move(value));
    } else {
      all_reasons.insert(all_reasons.end(), reasons.begin(), reasons.end());
      outcome.rejected.push_back({i, std::move(reasons)});
    }
  }
  if (accepted.empty()) {
    if (all_reasons.empty()) all_reasons.push_back(std::string("reply contains no ") + what);
    throw Rejection(std::move(all_reasons));
  }
  return accepted;
}

json parse_reply(std::string_view raw, std::vector<std::string>& notes) {
  bool had_text = false;
  const std::string body = extract_json_object(raw, &had_text);
  if (had_text) notes.push_back("stripped text surrounding the JSON object");
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw Rejection({std::string("reply is not valid JSON: ") + e.what()});
  }
}

}  // namespace

std::vector<std::string> identifier_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isalpha(c) || c == '_') {
      const std::size_t begin = i;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        ++i;
      }
      out.emplace_back(text.substr(begin, i - begin));
    } else {
      ++i;
    }
  }
  return out;
}

std::string extract_json_object(std::string_view raw, bool* had_surrounding_text) {
  const std::size_t open = raw.find('{');
  if (open == std::string_view::npos) throw Rejection({"reply contains no JSON object"});
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  for (std::size_t i = open; i < raw.size(); ++i) {
    const char c = raw[i];
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}' && --depth == 0) {
      if (had_surrounding_text != nullptr) {
        auto blank = [](std::string_view s) {
          return std::all_of(s.begin(), s.end(),
                             [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); });
        };
        *had_surrounding_text = !blank(raw.substr(0, open)) || !blank(raw.substr(i + 1));
      }
      return std::string(raw.substr(open, i - open + 1));
    }
  }
  throw Rejection({"reply has an unbalanced JSON object"});
}

std::optional<std::string_view> normalize_kind_alias(std::string_view kind) noexcept {
  static constexpr std::pair<std::string_view, std::string_view> kAliases[] = {
      {"monotonic_increasing", "monotonic_increase"},
      {"monotonic_decreasing", "monotonic_decrease"},
  };
  for (const auto& [alias, canonical] : kAliases) {
    if (kind == alias) return canonical;
  }
  return std::nullopt;
}

std::vector<std::string> check_constraints(const ConstraintSet& cs, const ValidationContext& ctx) {
  std::vector<std::string> out;
  std::set<std::string> names;
  auto check_side = [&](const std::vector<IoConstraint>& list, model::Causality causality) {
    for (const auto& c : list) {
      if (c.name.empty()) out.push_back("constraint with empty name");
      if (!names.insert(c.name).second) out.push_back("duplicate constraint '" + c.name + "'");
      if (c.min && c.max && *c.min > *c.max) out.push_back(c.name + ": min > max");
      if (ctx.model) {
        const auto* v = ctx.model->find(c.name);
        if (v == nullptr) {
          out.push_back("unknown variable '" + c.name + "' (not in model description)");
        } else if (v->causality != causality) {
          out.push_back(c.name + ": listed as " + std::string(model::to_string(causality)) +
                        " but model causality is " + std::string(model::to_string(v->causality)));
        }
      }
    }
  };
  check_side(cs.inputs, model::Causality::Input);
  check_side(cs.outputs, model::Causality::Output);
  return out;
}

std::vector<std::string> check_goal(const ScenarioGoal& goal, const ValidationContext& ctx) {
  std::vector<std::string> out;
  const std::string where = goal.id.empty() ? std::string("goal") : "goal " + goal.id;
  if (goal.pattern != "Given-When-Then") {
    out.push_back(where + ": pattern must be exactly \"Given-When-Then\"");
  }
  if (goal.then.empty()) out.push_back(where + ": 'then' must not be empty");
  if (goal.target_count < 1) out.push_back(where + ": target_count must be positive");
  check_prose("given", goal.given, ctx, where, out);
  check_prose("when", goal.when, ctx, where, out);
  for (const auto& item : goal.then) check_prose("then", item, ctx, where, out);
  for (const auto& token : identifier_tokens(goal.when)) {
    if (is_setpoint(token)) {
      out.push_back(where + ": setpoint driven (" + token + " referenced in 'when')");
    }
  }
  return out;
}

std::vector<std::string> check_plan(const ScenarioPlan& plan, const ValidationContext& ctx) {
  std::vector<std::string> out;
  const std::string where = plan.id.empty() ? "plan for " + plan.goal_id : "plan " + plan.id;
  if (ctx.goals && find_goal(ctx, plan.goal_id) == nullptr) {
    out.push_back(where + ": unknown goal '" + plan.goal_id + "'");
  }
  if (ctx.constraints) {
    for (const auto& [name, _] : plan.param_space) {
      if (!ctx.constraints->find_input(name)) {
        out.push_back(where + ": unknown input variable '" + name + "' in param_space");
      }
    }
    for (const auto& in : ctx.constraints->inputs) {
      if (!plan.param_space.contains(in.name)) {
        out.push_back(where + ": param_space is missing input '" + in.name + "'");
      }
    }
  }
  for (const auto& [name, sig] : plan.param_space) {
    check_signal(name, sig, ctx, where + " param_space." + name, out);
  }
  std::set<std::string> asserted;
  for (std::size_t i = 0; i < plan.assertions.size(); ++i) {
    const auto& a = plan.assertions[i];
    const std::string aw = where + " assertions[" + std::to_string(i) + "]";
    check_assertion(a, ctx, aw, out);
    if (!asserted.insert(var_of(a)).second) {
      out.push_back(aw + ": duplicate assertion for '" + var_of(a) + "'");
    }
  }
  if (const ScenarioGoal* goal = find_goal(ctx, plan.goal_id)) {
    if (goal->then.size() != plan.assertions.size()) {
      out.push_back(where + ": " + std::to_string(plan.assertions.size()) +
                    " assertions for " + std::to_string(goal->then.size()) + " 'then' items");
    }
    for (const auto& item : goal->then) {
      const auto tokens = identifier_tokens(item);
      const auto matches = std::count_if(
          plan.assertions.begin(), plan.assertions.end(), [&](const AssertionSpec& a) {
            return std::find(tokens.begin(), tokens.end(), var_of(a)) != tokens.end();
          });
      if (matches != 1) {
        out.push_back(where + ": 'then' item \"" + item + "\" maps to " +
                      std::to_string(matches) + " assertions");
      }
    }
  }
  return out;
}

ValidationOutcome validate_and_repair(std::string_view raw_text, Phase phase,
                                      const ValidationContext& ctx) {
  ValidationOutcome outcome;
  Repairer repair(outcome.repairs);
  json root = parse_reply(raw_text, outcome.repairs);

  switch (phase) {
    case Phase::Constraints: {
      if (!root.is_object()) throw Rejection({"constraints reply must be a JSON object"});
      repair_constraint_set(root, repair);
      std::vector<std::string> reasons;
      ConstraintSet cs = parse_constraint_set(root, reasons);
      if (reasons.empty()) reasons = check_constraints(cs, ctx);
      if (!reasons.empty()) throw Rejection(std::move(reasons));
      outcome.value = std::move(cs);
      break;
    }
    case Phase::Goals: {
      auto items = unwrap_batch(std::move(root), "goals", "pattern", repair);
      for (std::size_t i = 0; i < items.size(); ++i) {
        repair_goal(items[i], repair, "goals[" + std::to_string(i) + "]");
      }
      outcome.value =
          validate_batch<ScenarioGoal>(std::move(items), "goals", &parse_goal, &check_goal, ctx,
                                       outcome);
      break;
    }
    case Phase::Plans: {
      auto items = unwrap_batch(std::move(root), "plans", "param_space", repair);
      for (std::size_t i = 0; i < items.size(); ++i) {
        repair_plan(items[i], repair, "plans[" + std::to_string(i) + "]");
      }
      outcome.value =
          validate_batch<ScenarioPlan>(std::move(items), "plans", &parse_plan, &check_plan, ctx,
                                       outcome);
      break;
    }
  }
  return outcome;
}

ConstraintSet validate_constraints(std::string_view raw_text, const ValidationContext& ctx,
                                   std::vector<std::string>* repairs) {
  auto outcome = validate_and_repair(raw_text, Phase::Constraints, ctx);
  if (repairs) *repairs = std::move(outcome.repairs);
  return std::get<ConstraintSet>(std::move(outcome.value));
}

ScenarioGoal validate_goal_payload(const json& payload, const ValidationContext& ctx,
                                   std::vector<std::string>* repairs) {
  std::vector<std::string> notes;
  Repairer r(notes);
  json copy = payload;
  repair_goal(copy, r, "goal");
  std::vector<std::string> reasons;
  ScenarioGoal goal = parse_goal(copy, reasons);
  if (reasons.empty()) reasons = check_goal(goal, ctx);
  if (!reasons.empty()) throw Rejection(std::move(reasons));
  if (repairs) *repairs = std::move(notes);
  return goal;
}

ScenarioPlan validate_plan_payload(const json& payload, const ValidationContext& ctx,
                                   std::vector<std::string>* repairs) {
  std::vector<std::string> notes;
  Repairer r(notes);
  json copy = payload;
  repair_plan(copy, r, "plan");
  std::vector<std::string> reasons;
  ScenarioPlan plan = parse_plan(copy, reasons);
  if (reasons.empty()) reasons = check_plan(plan, ctx);
  if (!reasons.empty()) throw Rejection(std::move(reasons));
  if (repairs) *repairs = std::move(notes);
  return plan;
}

}  // namespace fmutest::scenario

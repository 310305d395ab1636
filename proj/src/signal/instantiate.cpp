#include "fmutest/signal/instantiate.hpp"

#include <algorithm>

#include "fmutest/error.hpp"
#include "fmutest/scenario/ids.hpp"
#include "fmutest/scenario/json_codec.hpp"
#include "fmutest/signal/lhs.hpp"

namespace fmutest::signal {

using scenario::ConstantSignal;
using scenario::ItemKind;
using scenario::ParamValue;
using scenario::RampSignal;
using scenario::ScenarioPlan;
using scenario::SignalSpace;
using scenario::StepSignal;

namespace {

// Field name -> member, listed in lexicographic field order.
std::vector<std::pair<std::string, ParamValue*>> fields_of(SignalSpace& s) {
  if (auto* c = std::get_if<ConstantSignal>(&s)) return {{"value", &c->value}};
  if (auto* st = std::get_if<StepSignal>(&s)) {
    return {{"at", &st->at}, {"from", &st->from}, {"to", &st->to}};
  }
  auto& r = std::get<RampSignal>(s);
  std::vector<std::pair<std::string, ParamValue*>> out;
  if (r.at) out.emplace_back("at", &*r.at);
  out.emplace_back("duration", &r.duration);
  out.emplace_back("end", &r.end);
  out.emplace_back("start", &r.start);
  return out;
}

}  // namespace

std::uint64_t plan_sub_seed(const ScenarioPlan& plan, std::uint64_t run_seed) {
  const std::string hex = scenario::canonical_digest(plan).hex64;
  const std::uint64_t head = std::stoull(hex.substr(0, 16), nullptr, 16);
  return head ^ run_seed;
}

std::vector<RangedField> ranged_fields(const ScenarioPlan& plan) {
  std::vector<RangedField> out;
  ScenarioPlan copy = plan;
  for (auto& [input, space] : copy.param_space) {
    for (const auto& [field, value] : fields_of(space)) {
      if (value->ranged()) out.push_back({input, field, {value->lo, value->hi}});
    }
  }
  return out;
}

scenario::CanonicalDigest input_hash(const std::map<std::string, TimeSeries>& inputs) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [var, ts] : inputs) j[var] = ts.values;
  return scenario::digest_json(j);
}

InstantiationResult instantiate(const ScenarioPlan& plan, const SimulationConfig& cfg,
                                scenario::HashIndex& index) {
  cfg.validate();
  const auto fields = ranged_fields(plan);
  std::vector<Range> ranges;
  ranges.reserve(fields.size());
  for (const auto& f : fields) ranges.push_back(f.range);

  const auto n = static_cast<std::size_t>(cfg.instantiations_per_plan);
  const auto points = lhs_sample(ranges, n, plan_sub_seed(plan, cfg.seed));

  int ordinal = 0;
  const std::string prefix = plan.id + "-T";
  for (const auto& id : index.ids(ItemKind::Scenario)) {
    if (id.rfind(prefix, 0) == 0) ordinal = std::max(ordinal, scenario::id_ordinal(id).value_or(0));
  }

  InstantiationResult result;
  for (std::size_t i = 0; i < n; ++i) {
    ScenarioPlan resolved = plan;
    std::size_t d = 0;
    for (auto& [input, space] : resolved.param_space) {
      for (auto& [field, value] : fields_of(space)) {
        if (value->ranged()) {
          *value = ParamValue::scalar(points[i][d++]);
        } else {
          *value = ParamValue::scalar(value->lo);
        }
      }
    }

    Scenario s;
    for (const auto& [input, space] : resolved.param_space) {
      s.inputs.emplace(input, synthesize(input, space, cfg));
    }
    s.assertions = plan.assertions;
    s.input_hash = input_hash(s.inputs);
    s.provenance = {plan.id, cfg.seed, i};

    if (auto existing = index.find(ItemKind::Scenario, s.input_hash.hex64)) {
      result.duplicates.emplace_back(s.input_hash.hex64, *existing);
      continue;
    }
    s.test_id = scenario::format_test_id(plan.id, ++ordinal);
    index.append({s.input_hash.hex64, s.test_id, ItemKind::Scenario});
    result.accepted.push_back(std::move(s));
  }
  return result;
}

nlohmann::json to_json(const Scenario& s) {
  nlohmann::json inputs = nlohmann::json::object();
  for (const auto& [var, ts] : s.inputs) inputs[var] = to_json(ts);
  nlohmann::json assertions = nlohmann::json::array();
  for (const auto& a : s.assertions) assertions.push_back(scenario::to_json(a));
  return {{"test_id", s.test_id},
          {"inputs", inputs},
          {"assertions", assertions},
          {"input_hash", s.input_hash.hex64},
          {"provenance",
           {{"plan_id", s.provenance.plan_id},
            {"seed", s.provenance.seed},
            {"sample_index", s.provenance.sample_index}}}};
}

Scenario scenario_from_json(const nlohmann::json& j) {
  Scenario s;
  try {
    s.test_id = j.at("test_id").get<std::string>();
    for (const auto& [var, body] : j.at("inputs").items()) {
      s.inputs.emplace(var, time_series_from_json(var, body));
    }
    for (const auto& a : j.at("assertions")) s.assertions.push_back(scenario::assertion_from_json(a));
    s.input_hash.hex64 = j.at("input_hash").get<std::string>();
    const auto& p = j.at("provenance");
    s.provenance.plan_id = p.at("plan_id").get<std::string>();
    s.provenance.seed = p.at("seed").get<std::uint64_t>();
    s.provenance.sample_index = p.at("sample_index").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::IoError, std::string("malformed scenario file: ") + e.what());
  }
  return s;
}

}  // namespace fmutest::signal

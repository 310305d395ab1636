#include "fmutest/oracle/aggregate.hpp"

#include "fmutest/error.hpp"
#include "fmutest/scenario/json_codec.hpp"

namespace fmutest::oracle {

using scenario::AssertionSpec;

namespace {

const signal::TimeSeries& output_of(const sim::SimulationResult& r, const std::string& var) {
  auto it = r.outputs.find(var);
  if (it == r.outputs.end()) {
    throw Error(Errc::MissingOutput, r.test_id + ": result has no output '" + var + "'");
  }
  return it->second;
}

}  // namespace

AssertionVerdict evaluate(const AssertionSpec& a, const signal::Scenario& scn,
                          const sim::SimulationResult& result) {
  const signal::TimeSeries& y = output_of(result, scenario::var_of(a));
  try {
    if (const auto* b = std::get_if<scenario::BoundedAssertion>(&a)) return eval_bounded(y, *b);
    if (const auto* c = std::get_if<scenario::CrossingAssertion>(&a)) return eval_crossing(y, *c);
    if (const auto* m = std::get_if<scenario::MonotonicAssertion>(&a)) {
      return eval_monotonic(y, *m);
    }
    const auto& s = std::get<scenario::SettlesToAssertion>(a);
    double target = 0.0;
    if (s.target_var) {
      auto it = scn.inputs.find(*s.target_var);
      if (it == scn.inputs.end()) {
        throw Error(Errc::MissingOutput, scn.test_id + ": no input series '" + *s.target_var + "'");
      }
      target = constant_level(it->second);
    } else {
      target = s.target.value_or(0.0);
    }
    return eval_settles_to(y, s, target);
  } catch (const Error& e) {
    if (e.code() != Errc::EmptyWindow) throw;
    AssertionVerdict v;
    v.assertion = a;
    v.passed = false;
    v.detail = e.what();
    return v;
  }
}

ScenarioVerdict aggregate(const signal::Scenario& scn, const sim::SimulationResult& result) {
  ScenarioVerdict verdict;
  verdict.test_id = scn.test_id;
  verdict.passed = true;
  for (const auto& a : scn.assertions) {
    AssertionVerdict v;
    if (result.status == sim::RunStatus::SimError) {
      v.assertion = a;
      v.passed = false;
      v.detail = "simulation error";
    } else {
      v = evaluate(a, scn, result);
    }
    verdict.passed = verdict.passed && v.passed;
    verdict.assertion_verdicts.push_back(std::move(v));
  }
  return verdict;
}

nlohmann::json to_json(const AssertionVerdict& v) {
  nlohmann::json j = {{"assertion", scenario::to_json(v.assertion)},
                      {"passed", v.passed},
                      {"detail", v.detail},
                      {"window_used", {v.window_used.first, v.window_used.second}}};
  if (v.ambiguous) j["ambiguous"] = true;
  return j;
}

nlohmann::json to_json(const ScenarioVerdict& v) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& a : v.assertion_verdicts) items.push_back(to_json(a));
  return {{"test_id", v.test_id}, {"passed", v.passed}, {"assertion_verdicts", items}};
}

}  // namespace fmutest::oracle

#include "fmutest/oracle/report.hpp"

#include <cstdio>

#include "fmutest/format.hpp"
#include "fmutest/scenario/json_codec.hpp"

namespace fmutest::oracle {

namespace {

std::string plan_of(const std::string& test_id) {
  const auto pos = test_id.rfind("-T");
  return pos == std::string::npos ? test_id : test_id.substr(0, pos);
}

std::string goal_of(const std::string& test_id) {
  const auto pos = test_id.find("-P");
  return pos == std::string::npos ? test_id : test_id.substr(0, pos);
}

std::string two_decimals(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

nlohmann::json overlay_for(const AssertionVerdict& v) {
  nlohmann::json o = {{"kind", std::string(scenario::to_string(scenario::kind_of(v.assertion)))},
                      {"var", scenario::var_of(v.assertion)},
                      {"passed", v.passed},
                      {"detail", v.detail}};
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, scenario::BoundedAssertion>) {
          o["band"] = {a.low, a.high};
          o["window"] = {v.window_used.first, v.window_used.second};
        } else if constexpr (std::is_same_v<T, scenario::CrossingAssertion>) {
          o["threshold"] = a.threshold;
          o["by_time"] = a.by_time;
          o["window"] = {v.window_used.first, v.window_used.second};
        } else if constexpr (std::is_same_v<T, scenario::MonotonicAssertion>) {
          o["window"] = {v.window_used.first, v.window_used.second};
          o["eps"] = a.eps.value_or(0.0);
        } else {
          const double target = v.target.value_or(a.target.value_or(0.0));
          o["target"] = target;
          o["band"] = {target - a.tol, target + a.tol};
          o["within"] = a.within;
          if (a.target_var) o["target_var"] = *a.target_var;
        }
      },
      v.assertion);
  if (v.ambiguous) o["ambiguous"] = true;
  return o;
}

std::map<std::string, GoalOutcome> goal_outcomes(const std::vector<ScenarioVerdict>& verdicts) {
  std::map<std::string, bool> plan_pass;
  for (const auto& v : verdicts) {
    auto [it, inserted] = plan_pass.emplace(plan_of(v.test_id), v.passed);
    if (!inserted) it->second = it->second && v.passed;
  }
  std::map<std::string, GoalOutcome> out;
  for (const auto& [plan, passed] : plan_pass) {
    auto& g = out[goal_of(plan)];
    ++g.plans_total;
    if (passed) ++g.plans_passed;
  }
  return out;
}

double aggregate_pass_rate(const std::vector<ScenarioVerdict>& verdicts) {
  if (verdicts.empty()) return 0.0;
  std::size_t passed = 0;
  for (const auto& v : verdicts) passed += v.passed ? 1 : 0;
  return round_decimals(static_cast<double>(passed) / static_cast<double>(verdicts.size()), 2);
}

ReportBundle render_report(const std::vector<ScenarioVerdict>& verdicts,
                           const std::vector<sim::SimulationResult>& results,
                           const std::vector<signal::Scenario>& scenarios) {
  ReportBundle bundle;
  nlohmann::json scen = nlohmann::json::array();
  nlohmann::json ambiguities = nlohmann::json::array();
  std::size_t passed = 0;
  for (const auto& v : verdicts) {
    scen.push_back(to_json(v));
    passed += v.passed ? 1 : 0;
    for (const auto& a : v.assertion_verdicts) {
      if (a.ambiguous) {
        ambiguities.push_back({{"test_id", v.test_id},
                               {"var", scenario::var_of(a.assertion)},
                               {"note", "monotonic pass with zero net change"}});
      }
    }
  }
  nlohmann::json goals = nlohmann::json::object();
  for (const auto& [gid, g] : goal_outcomes(verdicts)) {
    goals[gid] = {{"plans_passed", g.plans_passed},
                  {"plans_total", g.plans_total},
                  {"outcome", g.text()}};
  }
  const double rate = aggregate_pass_rate(verdicts);
  bundle.report = {{"scenarios", scen},
                   {"goals", goals},
                   {"aggregate",
                    {{"passed", passed},
                     {"total", verdicts.size()},
                     {"pass_rate", rate},
                     {"pass_rate_text", two_decimals(rate)}}},
                   {"ambiguities", ambiguities}};

  std::map<std::string, const sim::SimulationResult*> by_id;
  for (const auto& r : results) by_id[r.test_id] = &r;
  std::map<std::string, const signal::Scenario*> scn_by_id;
  for (const auto& s : scenarios) scn_by_id[s.test_id] = &s;

  for (const auto& v : verdicts) {
    nlohmann::json plot = {{"test_id", v.test_id}, {"passed", v.passed}};
    nlohmann::json series = nlohmann::json::object();
    if (auto it = by_id.find(v.test_id); it != by_id.end()) {
      for (const auto& [var, ts] : it->second->outputs) series[var] = signal::to_json(ts);
      plot["status"] = std::string(sim::to_string(it->second->status));
    }
    nlohmann::json inputs = nlohmann::json::object();
    if (auto it = scn_by_id.find(v.test_id); it != scn_by_id.end()) {
      for (const auto& [var, ts] : it->second->inputs) inputs[var] = signal::to_json(ts);
    }
    nlohmann::json overlays = nlohmann::json::array();
    for (const auto& a : v.assertion_verdicts) overlays.push_back(overlay_for(a));
    plot["series"] = series;
    plot["inputs"] = inputs;
    plot["overlays"] = overlays;
    bundle.plots.emplace(v.test_id, std::move(plot));
  }
  return bundle;
}

}  // namespace fmutest::oracle

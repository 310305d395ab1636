#include "fmutest/sim/runner.hpp"

#include <algorithm>
#include <cmath>

#include "fmutest/error.hpp"
#include "fmutest/scenario/types.hpp"

namespace fmutest::sim {

std::string_view to_string(RunStatus s) noexcept {
  return s == RunStatus::Completed ? "completed" : "sim_error";
}

namespace {

bool contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

void check_capabilities(const signal::Scenario& scn, const Capabilities& caps) {
  for (const auto& [name, ts] : scn.inputs) {
    if (!contains(caps.inputs, name)) {
      throw Error(Errc::CapabilityMismatch, "backend has no input '" + name + "'");
    }
  }
  for (const auto& name : caps.inputs) {
    if (scn.inputs.find(name) == scn.inputs.end()) {
      throw Error(Errc::CapabilityMismatch, "scenario does not drive input '" + name + "'");
    }
  }
  for (const auto& a : scn.assertions) {
    const std::string& var = scenario::var_of(a);
    if (!contains(caps.outputs, var)) {
      throw Error(Errc::CapabilityMismatch, "backend has no output '" + var + "'");
    }
  }
}

ValueMap inputs_at(const signal::Scenario& scn, std::size_t k) {
  ValueMap m;
  for (const auto& [name, ts] : scn.inputs) m[name] = ts.values.at(k);
  return m;
}

}  // namespace

SimulationResult run_scenario(const signal::Scenario& scn, SimulatorBackend& backend,
                              const signal::SimulationConfig& cfg) {
  cfg.validate();
  const Capabilities caps = backend.capabilities();
  check_capabilities(scn, caps);

  const std::size_t n = cfg.intervals();
  for (const auto& [name, ts] : scn.inputs) {
    if (ts.values.size() != n + 1) {
      throw Error(Errc::LengthMismatch, "input '" + name + "' does not match the output grid");
    }
  }

  SimulationResult result;
  result.test_id = scn.test_id;
  result.settings_log = {cfg.start_time,      cfg.stop_time,  cfg.step_size,
                         cfg.output_interval, cfg.output_tolerance, backend.id(),
                         backend.solver_note()};
  for (const auto& name : caps.outputs) {
    auto& ts = result.outputs[name];
    ts.var = name;
    ts.times.reserve(n + 1);
    ts.values.reserve(n + 1);
  }

  const auto substeps =
      static_cast<std::size_t>(std::llround(cfg.output_interval / cfg.step_size));
  double t = cfg.start_time;
  try {
    backend.reset(inputs_at(scn, 0));
    for (std::size_t k = 0; k <= n; ++k) {
      backend.set_inputs(inputs_at(scn, k));
      const ValueMap out = backend.outputs();
      const double tk = cfg.time_at(k);
      for (auto& [name, ts] : result.outputs) {
        auto it = out.find(name);
        if (it == out.end()) throw Error(Errc::SimError, "backend did not report '" + name + "'");
        ts.times.push_back(tk);
        ts.values.push_back(it->second);
      }
      if (k == n) break;
      for (std::size_t s = 0; s < substeps; ++s) {
        t = tk + static_cast<double>(s) * cfg.step_size;
        backend.do_step(t, cfg.step_size);
      }
    }
  } catch (const std::exception& e) {
    result.status = RunStatus::SimError;
    result.error = e.what();
  }
  return result;
}

nlohmann::json to_json(const SimulationResult& r) {
  nlohmann::json outputs = nlohmann::json::object();
  for (const auto& [var, ts] : r.outputs) outputs[var] = signal::to_json(ts);
  const auto& s = r.settings_log;
  nlohmann::json j = {{"test_id", r.test_id},
                      {"outputs", outputs},
                      {"settings_log",
                       {{"start_time", s.start_time},
                        {"stop_time", s.stop_time},
                        {"step_size", s.step_size},
                        {"output_interval", s.output_interval},
                        {"tolerance", s.tolerance},
                        {"backend", s.backend_id},
                        {"solver", s.solver_note}}},
                      {"status", std::string(to_string(r.status))}};
  if (r.status == RunStatus::SimError) j["error"] = r.error;
  return j;
}

SimulationResult simulation_result_from_json(const nlohmann::json& j) {
  SimulationResult r;
  try {
    r.test_id = j.at("test_id").get<std::string>();
    for (const auto& [var, body] : j.at("outputs").items()) {
      r.outputs.emplace(var, signal::time_series_from_json(var, body));
    }
    const auto& s = j.at("settings_log");
    r.settings_log = {s.at("start_time").get<double>(),      s.at("stop_time").get<double>(),
                      s.at("step_size").get<double>(),       s.at("output_interval").get<double>(),
                      s.at("tolerance").get<double>(),       s.at("backend").get<std::string>(),
                      s.at("solver").get<std::string>()};
    const auto status = j.at("status").get<std::string>();
    if (status == "completed") {
      r.status = RunStatus::Completed;
    } else if (status == "sim_error") {
      r.status = RunStatus::SimError;
      r.error = j.value("error", std::string());
    } else {
      throw Error(Errc::IoError, "unknown result status '" + status + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::IoError, std::string("malformed result file: ") + e.what());
  }
  return r;
}

}  // namespace fmutest::sim

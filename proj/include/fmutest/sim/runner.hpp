#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "fmutest/signal/instantiate.hpp"
#include "fmutest/signal/sim_config.hpp"
#include "fmutest/signal/synthesize.hpp"
#include "fmutest/sim/backend.hpp"

namespace fmutest::sim {

enum class RunStatus { Completed, SimError };

std::string_view to_string(RunStatus s) noexcept;

struct SettingsLog {
  double start_time = 0.0;
  double stop_time = 0.0;
  double step_size = 0.0;
  double output_interval = 0.0;
  double tolerance = 0.0;
  std::string backend_id;
  std::string solver_note;

  friend bool operator==(const SettingsLog&, const SettingsLog&) = default;
};

struct SimulationResult {
  std::string test_id;
  std::map<std::string, signal::TimeSeries> outputs;
  SettingsLog settings_log;
  RunStatus status = RunStatus::Completed;
  /// Backend fault message when status is SimError.
  std::string error;

  friend bool operator==(const SimulationResult&, const SimulationResult&) = default;
};

nlohmann::json to_json(const SimulationResult& r);
SimulationResult simulation_result_from_json(const nlohmann::json& j);

/// Steps the backend over [start, stop] with step_size, holding inputs between
/// output grid points and sampling every output at each grid point.
/// A backend fault yields status SimError with the samples recorded so far.
/// Throws Error{CapabilityMismatch} before stepping when names do not line up.
SimulationResult run_scenario(const signal::Scenario& scn, SimulatorBackend& backend,
                              const signal::SimulationConfig& cfg);

}  // namespace fmutest::sim

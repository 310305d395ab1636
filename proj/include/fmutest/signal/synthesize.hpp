#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fmutest/scenario/types.hpp"
#include "fmutest/signal/sim_config.hpp"

namespace fmutest::signal {

struct TimeSeries {
  std::string var;
  std::vector<double> times;
  std::vector<double> values;

  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;
};

/// Samples a resolved signal (every ParamValue scalar) on the output grid.
/// Step: right-continuous at the snapped `at`. Ramp: start before `at`,
/// linear over the snapped [at, at+duration], end afterwards.
/// Throws Error{OutOfWindow} for event times outside the window and
/// Error{InvalidConfig} if a range is left unresolved.
TimeSeries synthesize(const std::string& var, const scenario::SignalSpace& spec,
                      const SimulationConfig& cfg);

nlohmann::json to_json(const TimeSeries& ts);
TimeSeries time_series_from_json(const std::string& var, const nlohmann::json& j);

}  // namespace fmutest::signal

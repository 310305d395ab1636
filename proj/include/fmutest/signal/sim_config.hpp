#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <json.hpp>

namespace fmutest::signal {

struct SimulationConfig {
  double start_time = 0.0;
  double stop_time = 1000.0;
  double step_size = 1.0;
  double output_interval = 1.0;
  double output_tolerance = 1e-6;
  std::uint64_t seed = 42;
  int instantiations_per_plan = 1;

  /// Throws Error{InvalidConfig} naming the first violated invariant.
  void validate() const;

  /// N, the number of output intervals; the grid has N+1 points.
  [[nodiscard]] std::size_t intervals() const;
  [[nodiscard]] double time_at(std::size_t k) const noexcept;
  [[nodiscard]] std::vector<double> grid() const;

  /// Nearest grid index, ties toward the earlier point, clamped to [0, N].
  [[nodiscard]] std::size_t snap_index(double t) const;
  [[nodiscard]] double snap(double t) const { return time_at(snap_index(t)); }

  [[nodiscard]] bool in_window(double t) const noexcept {
    return t >= start_time && t <= stop_time;
  }

  friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
};

nlohmann::json to_json(const SimulationConfig& cfg);
/// Absent keys keep their defaults. Does not validate.
SimulationConfig sim_config_from_json(const nlohmann::json& j);

}  // namespace fmutest::signal

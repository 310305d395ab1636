#include "fmutest/signal/sim_config.hpp"

#include <cmath>
#include <string>

#include "fmutest/error.hpp"

namespace fmutest::signal {

namespace {

bool near_integral(double r) {
  return std::fabs(r - std::round(r)) <= 1e-9 * std::fmax(1.0, std::fabs(r));
}

void fail(const std::string& what) { throw Error(Errc::InvalidConfig, what); }

}  // namespace

void SimulationConfig::validate() const {
  if (!std::isfinite(start_time) || !std::isfinite(stop_time)) fail("times must be finite");
  if (!(start_time < stop_time)) fail("start_time must be below stop_time");
  if (!(step_size > 0.0)) fail("step_size must be positive");
  if (!(output_interval >= step_size)) fail("output_interval must be at least step_size");
  if (!near_integral(output_interval / step_size)) {
    fail("output_interval must be an integer multiple of step_size");
  }
  if (!near_integral((stop_time - start_time) / output_interval)) {
    fail("the window must hold an integral number of output intervals");
  }
  if (!(output_tolerance >= 0.0)) fail("output_tolerance must be non-negative");
  if (instantiations_per_plan < 1) fail("instantiations_per_plan must be positive");
}

std::size_t SimulationConfig::intervals() const {
  return static_cast<std::size_t>(std::llround((stop_time - start_time) / output_interval));
}

double SimulationConfig::time_at(std::size_t k) const noexcept {
  return start_time + static_cast<double>(k) * output_interval;
}

std::vector<double> SimulationConfig::grid() const {
  const std::size_t n = intervals();
  std::vector<double> t(n + 1);
  for (std::size_t k = 0; k <= n; ++k) t[k] = time_at(k);
  return t;
}

std::size_t SimulationConfig::snap_index(double t) const {
  const std::size_t n = intervals();
  const double x = (t - start_time) / output_interval;
  if (!(x > 0.0)) return 0;
  if (x >= static_cast<double>(n)) return n;
  const double k = std::floor(x);
  const double frac = x - k;
  auto idx = static_cast<std::size_t>(k);
  if (frac > 0.5 + 1e-12) ++idx;
  return idx > n ? n : idx;
}

nlohmann::json to_json(const SimulationConfig& cfg) {
  return {{"start_time", cfg.start_time},
          {"stop_time", cfg.stop_time},
          {"step_size", cfg.step_size},
          {"output_interval", cfg.output_interval},
          {"output_tolerance", cfg.output_tolerance},
          {"seed", cfg.seed},
          {"instantiations_per_plan", cfg.instantiations_per_plan}};
}

SimulationConfig sim_config_from_json(const nlohmann::json& j) {
  SimulationConfig cfg;
  if (!j.is_object()) throw Error(Errc::InvalidConfig, "simulation config must be an object");
  try {
    cfg.start_time = j.value("start_time", cfg.start_time);
    cfg.stop_time = j.value("stop_time", cfg.stop_time);
    cfg.step_size = j.value("step_size", cfg.step_size);
    cfg.output_interval = j.value("output_interval", cfg.output_interval);
    cfg.output_tolerance = j.value("output_tolerance", cfg.output_tolerance);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.instantiations_per_plan = j.value("instantiations_per_plan", cfg.instantiations_per_plan);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidConfig, std::string("simulation config: ") + e.what());
  }
  return cfg;
}

}  // namespace fmutest::signal

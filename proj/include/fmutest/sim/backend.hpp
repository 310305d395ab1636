#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace fmutest::sim {

struct Capabilities {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  bool supports_reset = true;
  /// Identical inputs after reset give identical outputs.
  bool deterministic = true;
};

using ValueMap = std::map<std::string, double>;

/// Co-simulation style backend. Call order per run:
/// reset(inputs at t0), then for each grid point: set_inputs, outputs, do_step...
/// One instance per worker; never shared between concurrent runs.
class SimulatorBackend {
 public:
  virtual ~SimulatorBackend() = default;

  [[nodiscard]] virtual std::string id() const = 0;
  [[nodiscard]] virtual Capabilities capabilities() const = 0;
  [[nodiscard]] virtual std::string solver_note() const { return {}; }

  virtual void reset(const ValueMap& initial_inputs) = 0;
  virtual void set_inputs(const ValueMap& inputs) = 0;
  /// Advances from t to t + h. Faults throw Error{SimError}.
  virtual void do_step(double t, double h) = 0;
  [[nodiscard]] virtual ValueMap outputs() const = 0;
};

using BackendFactory = std::function<std::unique_ptr<SimulatorBackend>()>;

/// Resolves a `--backend` value: "surrogate" or "fmi:<path>".
/// Throws Error{AdapterNotBundled} for fmi: when no adapter is registered and
/// Error{ConfigError} for anything else unknown.
BackendFactory resolve_backend(std::string_view spec);

/// Installs a factory for the fmi: scheme; receives the path after "fmi:".
void register_fmi_adapter(std::function<std::unique_ptr<SimulatorBackend>(std::string)> factory);
void clear_fmi_adapter();

}  // namespace fmutest::sim

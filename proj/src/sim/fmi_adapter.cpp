#include "fmutest/sim/fmi_adapter.hpp"

#include <memory>
#include <mutex>
#include <sstream>

#include "fmutest/error.hpp"
#include "fmutest/sim/backend.hpp"
#include "fmutest/sim/surrogate.hpp"

namespace fmutest::sim {

namespace {

std::mutex g_adapter_mutex;
std::function<std::unique_ptr<SimulatorBackend>(std::string)> g_fmi_factory;

}  // namespace

void register_fmi_adapter(std::function<std::unique_ptr<SimulatorBackend>(std::string)> factory) {
  std::lock_guard lock(g_adapter_mutex);
  g_fmi_factory = std::move(factory);
}

void clear_fmi_adapter() {
  std::lock_guard lock(g_adapter_mutex);
  g_fmi_factory = nullptr;
}

BackendFactory resolve_backend(std::string_view spec) {
  if (spec == "surrogate") {
    return [] { return std::make_unique<SurrogateBackend>(); };
  }
  if (spec.rfind("fmi:", 0) == 0) {
    std::string path(spec.substr(4));
    std::lock_guard lock(g_adapter_mutex);
    if (!g_fmi_factory) {
      throw Error(Errc::AdapterNotBundled,
                  "adapter not bundled: no FMI co-simulation adapter is registered for " + path);
    }
    auto factory = g_fmi_factory;
    return [factory, path] { return factory(path); };
  }
  throw Error(Errc::ConfigError, "unknown backend '" + std::string(spec) + "'");
}

AdapterContract describe_fmi_adapter(const model::ModelDescription* md) {
  AdapterContract c;
  c.call_sequence = {
      "instantiate the co-simulation slave from the FMU archive",
      "setup experiment with start_time, stop_time and output_tolerance",
      "set inputs at t0 by value reference",
      "exit initialization mode",
      "for each grid point: set inputs by value reference, read outputs by value reference, "
      "then do-step of step_size until the next grid point",
      "terminate and free the instance",
  };
  c.requirements = {
      "inputs are set before every do-step; outputs are read after inputs for that time are set",
      "variable names map to value references through modelDescription.xml",
      "capabilities report exactly the model's input and output names",
      "identical inputs after reset produce bit-identical outputs (deterministic flag set)",
      "a failed do-step raises SimError; samples recorded before the failure are kept",
  };
  if (md != nullptr) {
    for (const auto& v : md->variables) {
      if (v.causality == model::Causality::Input || v.causality == model::Causality::Output) {
        c.bindings.push_back({v.name, v.value_reference, std::string(model::to_string(v.causality))});
      }
    }
  }
  return c;
}

nlohmann::json to_json(const AdapterContract& c) {
  nlohmann::json bindings = nlohmann::json::array();
  for (const auto& b : c.bindings) {
    bindings.push_back(
        {{"name", b.name}, {"value_reference", b.value_reference}, {"causality", b.causality}});
  }
  return {{"call_sequence", c.call_sequence},
          {"requirements", c.requirements},
          {"requires_deterministic", c.requires_deterministic},
          {"set_inputs_before_step", c.set_inputs_before_step},
          {"bindings", bindings}};
}

std::string render_contract(const AdapterContract& c) {
  std::ostringstream os;
  os << "FMI co-simulation adapter contract\n\nCall sequence:\n";
  int i = 1;
  for (const auto& s : c.call_sequence) os << "  " << i++ << ". " << s << "\n";
  os << "\nRequirements:\n";
  for (const auto& r : c.requirements) os << "  - " << r << "\n";
  if (!c.bindings.empty()) {
    os << "\nValue references:\n";
    for (const auto& b : c.bindings) {
      os << "  " << b.value_reference << "\t" << b.causality << "\t" << b.name << "\n";
    }
  }
  return os.str();
}

}  // namespace fmutest::sim

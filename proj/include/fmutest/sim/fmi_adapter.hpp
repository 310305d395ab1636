#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fmutest/model/model_description.hpp"

namespace fmutest::sim {

struct VariableBinding {
  std::string name;
  std::uint32_t value_reference = 0;
  std::string causality;
};

/// What a real co-simulation adapter must implement to stand in for the
/// surrogate. No binding ships with this library.
struct AdapterContract {
  std::vector<std::string> call_sequence;
  std::vector<std::string> requirements;
  bool requires_deterministic = true;
  bool set_inputs_before_step = true;
  std::vector<VariableBinding> bindings;
};

/// Bindings are filled from `md` (inputs and outputs only) when given.
AdapterContract describe_fmi_adapter(const model::ModelDescription* md = nullptr);

nlohmann::json to_json(const AdapterContract& c);
std::string render_contract(const AdapterContract& c);

}  // namespace fmutest::sim

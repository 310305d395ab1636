#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fmutest::model {

enum class Causality { Input, Output, Parameter, Local };
enum class Variability { Continuous, Discrete, Constant };

std::string_view to_string(Causality c) noexcept;
std::string_view to_string(Variability v) noexcept;

struct ModelVariable {
  std::string name;
  Causality causality = Causality::Local;
  Variability variability = Variability::Continuous;
  std::uint32_t value_reference = 0;
  std::string description;
  std::optional<std::string> initial;
  std::optional<double> start;
  std::optional<double> min;
  std::optional<double> max;
  std::optional<std::string> unit;  // verbatim from the descriptor
};

struct ModelDescription {
  std::string model_name;
  std::vector<ModelVariable> variables;  // document order
  std::vector<std::string> warnings;

  [[nodiscard]] const ModelVariable* find(std::string_view name) const noexcept;
  [[nodiscard]] std::vector<const ModelVariable*> with_causality(Causality c) const;
  /// True when the model has at least one input and one output.
  [[nodiscard]] bool testable() const;
};

/// Parses an FMI modelDescription.xml (or a bare <ModelVariables> excerpt).
/// Throws Error{MalformedXml | MissingVariables | DuplicateName | InvalidBounds}.
ModelDescription parse_model_description(std::string_view xml_bytes);

}  // namespace fmutest::model

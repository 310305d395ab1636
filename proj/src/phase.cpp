#include "fmutest/phase.hpp"

namespace fmutest {

std::string_view to_string(Phase p) noexcept {
  switch (p) {
    case Phase::Constraints: return "constraints";
    case Phase::Goals: return "goals";
    case Phase::Plans: return "plans";
  }
  return "constraints";
}

std::optional<Phase> parse_phase(std::string_view text) noexcept {
  if (text == "constraints") return Phase::Constraints;
  if (text == "goals") return Phase::Goals;
  if (text == "plans") return Phase::Plans;
  return std::nullopt;
}

}  // namespace fmutest

#pragma once

#include <optional>
#include <string_view>

namespace fmutest {

/// LLM-backed generation phases, in pipeline order.
enum class Phase { Constraints, Goals, Plans };

std::string_view to_string(Phase p) noexcept;
std::optional<Phase> parse_phase(std::string_view text) noexcept;

}  // namespace fmutest

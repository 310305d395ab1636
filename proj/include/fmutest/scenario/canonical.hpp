#pragma once

#include <compare>
#include <string>

#include <json.hpp>

#include "fmutest/scenario/types.hpp"

namespace fmutest::scenario {

/// SHA-256 over a canonical serialization, as 64 lowercase hex characters.
struct CanonicalDigest {
  std::string hex64;

  friend auto operator<=>(const CanonicalDigest&, const CanonicalDigest&) = default;
};

/// Sorted keys, no insignificant whitespace, reals at 9 significant digits.
std::string canonical_dump(const nlohmann::json& value);

CanonicalDigest digest_json(const nlohmann::json& value);

// Content digests: `id` and `review_status` are excluded.
CanonicalDigest canonical_digest(const ScenarioGoal& goal);
CanonicalDigest canonical_digest(const ScenarioPlan& plan);
CanonicalDigest canonical_digest(const ConstraintSet& constraints);

}  // namespace fmutest::scenario

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fmutest/scenario/canonical.hpp"
#include "fmutest/scenario/dedup.hpp"
#include "fmutest/scenario/types.hpp"
#include "fmutest/signal/lhs.hpp"
#include "fmutest/signal/sim_config.hpp"
#include "fmutest/signal/synthesize.hpp"

namespace fmutest::signal {

struct Provenance {
  std::string plan_id;
  std::uint64_t seed = 0;  // run seed; the plan sub-seed follows from it and the plan digest
  std::size_t sample_index = 0;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Scenario {
  std::string test_id;
  std::map<std::string, TimeSeries> inputs;
  std::vector<scenario::AssertionSpec> assertions;
  scenario::CanonicalDigest input_hash;
  Provenance provenance;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

nlohmann::json to_json(const Scenario& s);
Scenario scenario_from_json(const nlohmann::json& j);

/// First 8 bytes of the plan digest (big-endian) XOR the run seed.
std::uint64_t plan_sub_seed(const scenario::ScenarioPlan& plan, std::uint64_t run_seed);

/// A ranged field of a plan's param_space, in sampling order.
struct RangedField {
  std::string input;
  std::string field;
  Range range;
};

/// Ranged fields ordered by input name, then field name.
std::vector<RangedField> ranged_fields(const scenario::ScenarioPlan& plan);

/// Digest over {var: values} with values at 9 significant digits.
scenario::CanonicalDigest input_hash(const std::map<std::string, TimeSeries>& inputs);

struct InstantiationResult {
  std::vector<Scenario> accepted;
  /// (input hash of the dropped candidate, test id already holding it)
  std::vector<std::pair<std::string, std::string>> duplicates;
};

/// Draws cfg.instantiations_per_plan LHS points, synthesizes inputs, numbers
/// accepted scenarios T001.. after any already indexed for the plan, and drops
/// candidates whose input hash is in the index.
InstantiationResult instantiate(const scenario::ScenarioPlan& plan, const SimulationConfig& cfg,
                                scenario::HashIndex& index);

}  // namespace fmutest::signal

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "fmutest/mutation/operators.hpp"
#include "fmutest/scenario/types.hpp"
#include "fmutest/signal/instantiate.hpp"
#include "fmutest/sim/runner.hpp"

namespace fmutest::mutation {

struct MutantRecord {
  std::string mutant_id;  // M0001
  Operator op = Operator::Mirror;
  std::string test_id;    // owning scenario
  std::string var;
  std::optional<std::string> partner_test_id;  // crossover only
  nlohmann::json params = nlohmann::json::object();
  bool killed = false;
  std::vector<std::string> killing_assertions;
  std::vector<double> series;
};

struct MutationCampaign {
  std::vector<std::string> scenarios;  // passing scenarios used, in test_id order
  std::vector<std::string> excluded;   // failing on the unmutated system
  std::vector<MutantRecord> mutants;
  std::size_t killed = 0;
  double score = 0.0;
};

struct CampaignOptions {
  std::set<Operator> operators{Operator::Mirror, Operator::RandomUniform, Operator::Crossover,
                               Operator::Polynomial};
  std::uint64_t seed = 42;
  double eta = kDefaultEta;
};

/// killed / total truncated (never rounded up) to `decimals`.
double score_report(std::size_t killed, std::size_t total, int decimals);

/// Mutants: per passing scenario (test_id order) x asserted output x
/// {mirror, random_uniform, polynomial}, then for each output two crossover
/// mutants per unordered pair of scenarios asserting it (site N/2).
/// Mutant ordinal k uses generator stream k. Throws Error{NoPassingScenarios}.
MutationCampaign run_campaign(const std::vector<signal::Scenario>& scenarios,
                              const std::vector<sim::SimulationResult>& results,
                              const scenario::ConstraintSet& constraints,
                              const CampaignOptions& options = {});

nlohmann::json to_json(const MutantRecord& m);
/// score, 2- and 3-decimal reports, counts, and the scenario x mutant kill matrix.
nlohmann::json mutation_report(const MutationCampaign& c);

}  // namespace fmutest::mutation

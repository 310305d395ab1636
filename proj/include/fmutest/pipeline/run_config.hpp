#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "fmutest/llm/gateway.hpp"
#include "fmutest/mutation/operators.hpp"
#include "fmutest/phase.hpp"
#include "fmutest/signal/sim_config.hpp"
#include "fmutest/sim/surrogate.hpp"

namespace fmutest::pipeline {

struct RunConfig {
  std::string system_name = "LOC";
  std::string model_id = "gpt-4.1";
  std::map<Phase, double> temperatures{
      {Phase::Constraints, 0.2}, {Phase::Goals, 0.7}, {Phase::Plans, 0.2}};
  signal::SimulationConfig sim;
  llm::LlmMode llm_mode = llm::LlmMode::Replay;
  /// "http" or "scripted:<dir>"; unused in replay mode.
  std::string provider = "http";
  std::filesystem::path fixture_dir;
  std::filesystem::path prompt_dir;
  std::string prompt_version = "v1";
  std::map<Phase, int> request_budget;
  std::filesystem::path fmu;
  std::vector<std::filesystem::path> docs;
  std::string types_str = "positive, boundary";
  std::set<mutation::Operator> operators{mutation::Operator::Mirror,
                                         mutation::Operator::RandomUniform,
                                         mutation::Operator::Crossover,
                                         mutation::Operator::Polynomial};
  std::uint64_t mutation_seed = 42;
  /// Shared digest index for cross-run dedup; defaults to the run's own.
  std::optional<std::filesystem::path> store_path;
  std::string backend = "surrogate";
  sim::SurrogateParams surrogate;
  bool auto_accept = false;

  /// Throws Error{ConfigError} (or InvalidConfig for the simulation window).
  /// With check_paths, referenced files and directories must exist.
  void validate(bool check_paths) const;
};

nlohmann::json to_json(const RunConfig& c);

/// Missing keys keep defaults; relative paths resolve against base_dir.
/// FMUTEST_LLM_MODEL overrides model_id when set.
RunConfig run_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);

RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace fmutest::pipeline

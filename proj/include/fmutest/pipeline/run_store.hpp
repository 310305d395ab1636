#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fmutest/pipeline/run_config.hpp"

namespace fmutest::pipeline {

enum class Stage {
  Created,
  ConstraintsReady,
  GoalsGenerated,
  GoalsReviewed,
  PlansGenerated,
  PlansReviewed,
  ScenariosReady,
  Executed,
  Mutated,
  Reported,
};

std::string_view to_string(Stage s) noexcept;
std::optional<Stage> parse_stage(std::string_view text) noexcept;
constexpr int stage_index(Stage s) noexcept { return static_cast<int>(s); }

struct RunState {
  std::string run_id;
  Stage stage = Stage::Created;
  std::map<std::string, std::string> timestamps;  // stage name -> ISO time
};

nlohmann::json to_json(const RunState& s);
RunState run_state_from_json(const nlohmann::json& j);

/// UTC timestamp plus a short random suffix, e.g. 20261014T093000Z-3f9a1c.
std::string new_run_id();

/// Filesystem layout under runs/<run_id>/. All JSON is written canonically.
class RunStore {
 public:
  explicit RunStore(std::filesystem::path root);

  [[nodiscard]] const std::filesystem::path& root() const noexcept { return root_; }
  [[nodiscard]] std::filesystem::path dir(const std::string& run_id) const;
  [[nodiscard]] bool exists(const std::string& run_id) const;
  [[nodiscard]] std::vector<std::string> list_runs() const;

  /// Throws Error{ConfigError} if the id is taken or malformed.
  RunState create(const RunConfig& config, std::optional<std::string> run_id = std::nullopt);

  /// Throws Error{UnknownItem} for unknown runs.
  [[nodiscard]] RunState load_state(const std::string& run_id) const;
  void save_state(const RunState& state) const;
  [[nodiscard]] RunConfig load_config(const std::string& run_id) const;
  void save_config(const std::string& run_id, const RunConfig& config) const;

  void write_json(const std::string& run_id, const std::string& rel,
                  const nlohmann::json& value) const;
  [[nodiscard]] nlohmann::json read_json(const std::string& run_id, const std::string& rel) const;
  [[nodiscard]] bool has(const std::string& run_id, const std::string& rel) const;
  /// Names (without .json) of JSON files in a run subdirectory, sorted.
  [[nodiscard]] std::vector<std::string> list_json(const std::string& run_id,
                                                   const std::string& subdir) const;

  /// Appends "<ISO ts> <stage> <LEVEL> <message>" to pipeline.log.
  void log(const std::string& run_id, std::string_view stage, std::string_view level,
           std::string_view message) const;

  /// Exclusive per-run lock; runs proceed independently of each other.
  std::mutex& lock_for(const std::string& run_id);

 private:
  std::filesystem::path root_;
  std::mutex locks_mutex_;
  std::map<std::string, std::unique_ptr<std::mutex>> locks_;
};

}  // namespace fmutest::pipeline

#include "fmutest/pipeline/run_store.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <random>
#include <regex>

#include "fmutest/error.hpp"
#include "fmutest/io.hpp"
#include "fmutest/scenario/canonical.hpp"

namespace fmutest::pipeline {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kStageNames[] = {
    "created",        "constraints_ready", "goals_generated", "goals_reviewed", "plans_generated",
    "plans_reviewed", "scenarios_ready",   "executed",        "mutated",        "reported"};

bool valid_run_id(const std::string& id) {
  static const std::regex re(R"(^[A-Za-z0-9][A-Za-z0-9._-]{0,127}$)");
  return std::regex_match(id, re);
}

}  // namespace

std::string_view to_string(Stage s) noexcept { return kStageNames[stage_index(s)]; }

std::optional<Stage> parse_stage(std::string_view text) noexcept {
  for (int i = 0; i < static_cast<int>(std::size(kStageNames)); ++i) {
    if (kStageNames[i] == text) return static_cast<Stage>(i);
  }
  return std::nullopt;
}

nlohmann::json to_json(const RunState& s) {
  return {{"run_id", s.run_id},
          {"stage", std::string(to_string(s.stage))},
          {"timestamps", s.timestamps}};
}

RunState run_state_from_json(const nlohmann::json& j) {
  RunState s;
  try {
    s.run_id = j.at("run_id").get<std::string>();
    const auto stage = j.at("stage").get<std::string>();
    auto parsed = parse_stage(stage);
    if (!parsed) throw Error(Errc::IoError, "unknown stage '" + stage + "' in state.json");
    s.stage = *parsed;
    s.timestamps = j.value("timestamps", std::map<std::string, std::string>{});
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::IoError, std::string("malformed state.json: ") + e.what());
  }
  return s;
}

std::string new_run_id() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y%m%dT%H%M%SZ", &tm);
  std::random_device rd;
  char suffix[8];
  std::snprintf(suffix, sizeof suffix, "%06x", rd() & 0xffffffu);
  return std::string(stamp) + "-" + suffix;
}

RunStore::RunStore(fs::path root) : root_(std::move(root)) {}

fs::path RunStore::dir(const std::string& run_id) const { return root_ / run_id; }

bool RunStore::exists(const std::string& run_id) const {
  return valid_run_id(run_id) && fs::exists(dir(run_id) / "state.json");
}

std::vector<std::string> RunStore::list_runs() const {
  std::vector<std::string> out;
  if (!fs::exists(root_)) return out;
  for (const auto& e : fs::directory_iterator(root_)) {
    if (e.is_directory() && fs::exists(e.path() / "state.json")) {
      out.push_back(e.path().filename().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

RunState RunStore::create(const RunConfig& config, std::optional<std::string> run_id) {
  const std::string id = run_id ? *run_id : new_run_id();
  if (!valid_run_id(id)) throw Error(Errc::ConfigError, "invalid run id '" + id + "'");
  if (exists(id)) throw Error(Errc::ConfigError, "run '" + id + "' already exists");
  fs::create_directories(dir(id));
  save_config(id, config);
  RunState state;
  state.run_id = id;
  state.stage = Stage::Created;
  state.timestamps["created"] = iso8601_now();
  save_state(state);
  log(id, "created", "INFO", "run created");
  return state;
}

RunState RunStore::load_state(const std::string& run_id) const {
  if (!exists(run_id)) throw Error(Errc::UnknownItem, "unknown run " + run_id);
  return run_state_from_json(read_json(run_id, "state.json"));
}

void RunStore::save_state(const RunState& state) const {
  write_json(state.run_id, "state.json", to_json(state));
}

RunConfig RunStore::load_config(const std::string& run_id) const {
  return run_config_from_json(read_json(run_id, "config.json"), dir(run_id));
}

void RunStore::save_config(const std::string& run_id, const RunConfig& config) const {
  write_json(run_id, "config.json", to_json(config));
}

void RunStore::write_json(const std::string& run_id, const std::string& rel,
                          const nlohmann::json& value) const {
  write_file_atomic(dir(run_id) / rel, scenario::canonical_dump(value) + "\n");
}

nlohmann::json RunStore::read_json(const std::string& run_id, const std::string& rel) const {
  const auto path = dir(run_id) / rel;
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::IoError, "cannot parse " + path.string() + ": " + e.what());
  }
}

bool RunStore::has(const std::string& run_id, const std::string& rel) const {
  return fs::exists(dir(run_id) / rel);
}

std::vector<std::string> RunStore::list_json(const std::string& run_id,
                                             const std::string& subdir) const {
  std::vector<std::string> out;
  const auto d = dir(run_id) / subdir;
  if (!fs::exists(d)) return out;
  for (const auto& e : fs::directory_iterator(d)) {
    if (e.is_regular_file() && e.path().extension() == ".json") {
      out.push_back(e.path().stem().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void RunStore::log(const std::string& run_id, std::string_view stage, std::string_view level,
                   std::string_view message) const {
  std::string line = iso8601_now();
  line += ' ';
  line += stage;
  line += ' ';
  line += level;
  line += ' ';
  line += message;
  append_line(dir(run_id) / "pipeline.log", line);
}

std::mutex& RunStore::lock_for(const std::string& run_id) {
  std::lock_guard lock(locks_mutex_);
  auto& slot = locks_[run_id];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

}  // namespace fmutest::pipeline

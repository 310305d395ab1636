#include "fmutest/pipeline/run_config.hpp"

#include <cstdlib>

#include "fmutest/error.hpp"
#include "fmutest/io.hpp"

namespace fmutest::pipeline {

namespace fs = std::filesystem;

namespace {

void config_error(const std::string& what) { throw Error(Errc::ConfigError, what); }

fs::path resolve(const fs::path& base, const std::string& p) {
  if (p.empty()) return {};
  fs::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

Phase phase_key(const std::string& key) {
  auto p = parse_phase(key);
  if (!p) config_error("unknown phase '" + key + "'");
  return *p;
}

}  // namespace

void RunConfig::validate(bool check_paths) const {
  if (system_name.empty()) config_error("system_name must be set");
  for (const auto& [phase, t] : temperatures) {
    if (!(t >= 0.0 && t <= 1.0)) {
      config_error("temperature for " + std::string(to_string(phase)) + " outside [0, 1]");
    }
  }
  sim.validate();
  surrogate.validate();
  if (operators.empty()) config_error("at least one mutation operator is required");
  if (!check_paths) return;
  auto require = [](const fs::path& p, const char* what) {
    if (p.empty() || !fs::exists(p)) {
      config_error(std::string(what) + " not found: " + (p.empty() ? "<unset>" : p.string()));
    }
  };
  require(prompt_dir, "prompt directory");
  if (llm_mode != llm::LlmMode::Live) require(fixture_dir, "fixture directory");
  require(fmu, "model description");
  for (const auto& d : docs) require(d, "specification document");
}

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json temps = nlohmann::json::object();
  for (const auto& [p, t] : c.temperatures) temps[std::string(to_string(p))] = t;
  nlohmann::json budget = nlohmann::json::object();
  for (const auto& [p, n] : c.request_budget) budget[std::string(to_string(p))] = n;
  std::vector<std::string> docs;
  for (const auto& d : c.docs) docs.push_back(d.string());
  std::vector<std::string> ops;
  for (auto op : c.operators) ops.emplace_back(mutation::to_string(op));
  nlohmann::json j = {{"system_name", c.system_name},
                      {"model_id", c.model_id},
                      {"temperatures", temps},
                      {"simulation", signal::to_json(c.sim)},
                      {"llm_mode", std::string(llm::to_string(c.llm_mode))},
                      {"provider", c.provider},
                      {"fixture_dir", c.fixture_dir.string()},
                      {"prompt_dir", c.prompt_dir.string()},
                      {"prompt_version", c.prompt_version},
                      {"request_budget", budget},
                      {"fmu", c.fmu.string()},
                      {"docs", docs},
                      {"types_str", c.types_str},
                      {"operators", ops},
                      {"mutation_seed", c.mutation_seed},
                      {"backend", c.backend},
                      {"surrogate", sim::to_json(c.surrogate)},
                      {"auto_accept", c.auto_accept}};
  j["store_path"] = c.store_path ? nlohmann::json(c.store_path->string()) : nlohmann::json();
  return j;
}

RunConfig run_config_from_json(const nlohmann::json& j, const fs::path& base_dir) {
  if (!j.is_object()) config_error("run config must be a JSON object");
  RunConfig c;
  try {
    c.system_name = j.value("system_name", c.system_name);
    c.model_id = j.value("model_id", c.model_id);
    if (j.contains("temperatures")) {
      for (const auto& [k, v] : j.at("temperatures").items()) {
        c.temperatures[phase_key(k)] = v.get<double>();
      }
    }
    if (j.contains("simulation")) c.sim = signal::sim_config_from_json(j.at("simulation"));
    if (j.contains("llm_mode")) {
      const auto text = j.at("llm_mode").get<std::string>();
      auto mode = llm::parse_llm_mode(text);
      if (!mode) config_error("unknown llm_mode '" + text + "'");
      c.llm_mode = *mode;
    }
    c.provider = j.value("provider", c.provider);
    if (c.provider.rfind("scripted:", 0) == 0) {
      c.provider = "scripted:" + resolve(base_dir, c.provider.substr(9)).string();
    }
    c.fixture_dir = resolve(base_dir, j.value("fixture_dir", std::string()));
    c.prompt_dir = resolve(base_dir, j.value("prompt_dir", std::string()));
    c.prompt_version = j.value("prompt_version", c.prompt_version);
    if (j.contains("request_budget")) {
      for (const auto& [k, v] : j.at("request_budget").items()) {
        c.request_budget[phase_key(k)] = v.get<int>();
      }
    }
    c.fmu = resolve(base_dir, j.value("fmu", std::string()));
    if (j.contains("docs")) {
      for (const auto& d : j.at("docs")) c.docs.push_back(resolve(base_dir, d.get<std::string>()));
    }
    c.types_str = j.value("types_str", c.types_str);
    if (j.contains("operators")) {
      c.operators.clear();
      for (const auto& o : j.at("operators")) {
        const auto text = o.get<std::string>();
        auto op = mutation::parse_operator(text);
        if (!op) config_error("unknown mutation operator '" + text + "'");
        c.operators.insert(*op);
      }
    }
    c.mutation_seed = j.value("mutation_seed", c.mutation_seed);
    if (j.contains("store_path") && !j.at("store_path").is_null()) {
      c.store_path = resolve(base_dir, j.at("store_path").get<std::string>());
    }
    c.backend = j.value("backend", c.backend);
    if (j.contains("surrogate")) c.surrogate = sim::surrogate_params_from_json(j.at("surrogate"));
    c.auto_accept = j.value("auto_accept", c.auto_accept);
  } catch (const nlohmann::json::exception& e) {
    config_error(std::string("run config: ") + e.what());
  }
  if (const char* model = std::getenv("FMUTEST_LLM_MODEL"); model != nullptr && *model != '\0') {
    c.model_id = model;
  }
  return c;
}

RunConfig load_run_config(const fs::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    config_error("cannot parse " + path.string() + ": " + e.what());
  }
  return run_config_from_json(j, fs::absolute(path).parent_path());
}

}  // namespace fmutest::pipeline

#include "fmutest/llm/providers.hpp"

#include <cstdlib>
#include <regex>

#include <httplib.h>
#include <json.hpp>

#include "fmutest/error.hpp"
#include "fmutest/io.hpp"

namespace fmutest::llm {

namespace {

std::string env_or_empty(const char* name) {
  const char* v = std::getenv(name);
  return v == nullptr ? std::string() : std::string(v);
}

}  // namespace

HttpProviderConfig http_config_from_env() {
  HttpProviderConfig c;
  c.endpoint = env_or_empty("FMUTEST_LLM_ENDPOINT");
  c.api_key = env_or_empty("FMUTEST_LLM_API_KEY");
  return c;
}

HttpProvider::HttpProvider(HttpProviderConfig config) : config_(std::move(config)) {
  static const std::regex url(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(config_.endpoint, m, url)) {
    throw Error(Errc::ConfigError, "LLM endpoint '" + config_.endpoint + "' is not an http(s) URL");
  }
  base_ = m[1].str();
  path_ = m[2].matched ? m[2].str() : "/v1/chat/completions";
}

std::string HttpProvider::complete(const LlmRequest& req) {
  httplib::Client client(base_);
  client.set_connection_timeout(config_.timeout_seconds, 0);
  client.set_read_timeout(config_.timeout_seconds, 0);
  httplib::Headers headers;
  if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);

  const nlohmann::json body = {
      {"model", req.model_id},
      {"temperature", req.temperature},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", req.prompt_text}}})}};
  auto res = client.Post(path_, headers, body.dump(), "application/json");
  if (!res) {
    throw ProviderError(0, "transport failure: " + httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw ProviderError(res->status, "provider returned HTTP " + std::to_string(res->status));
  }
  try {
    const auto j = nlohmann::json::parse(res->body);
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ProviderError(res->status, std::string("unexpected provider payload: ") + e.what());
  }
}

ScriptedProvider::ScriptedProvider(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::string ScriptedProvider::complete(const LlmRequest& req) {
  const auto path = dir_ / (std::string(to_string(req.phase)) + ".txt");
  if (!std::filesystem::exists(path)) {
    throw ProviderError(404, "no scripted reply at " + path.string());
  }
  return read_file(path);
}

std::shared_ptr<Provider> make_provider(std::string_view spec) {
  if (spec == "http") return std::make_shared<HttpProvider>(http_config_from_env());
  if (spec.rfind("scripted:", 0) == 0) {
    return std::make_shared<ScriptedProvider>(std::filesystem::path(std::string(spec.substr(9))));
  }
  throw Error(Errc::ConfigError, "unknown LLM provider '" + std::string(spec) + "'");
}

}  // namespace fmutest::llm

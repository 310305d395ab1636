#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "fmutest/llm/gateway.hpp"

namespace fmutest::llm {

struct HttpProviderConfig {
  /// Full URL of an OpenAI-compatible chat completions endpoint.
  std::string endpoint;
  std::string api_key;
  int timeout_seconds = 120;
};

/// Reads FMUTEST_LLM_ENDPOINT and FMUTEST_LLM_API_KEY.
HttpProviderConfig http_config_from_env();

class HttpProvider final : public Provider {
 public:
  explicit HttpProvider(HttpProviderConfig config);
  [[nodiscard]] std::string name() const override { return "http"; }
  std::string complete(const LlmRequest& req) override;

 private:
  HttpProviderConfig config_;
  std::string base_;
  std::string path_;
};

/// Serves <dir>/<phase>.txt for every request of that phase; used to capture
/// fixtures from canned replies.
class ScriptedProvider final : public Provider {
 public:
  explicit ScriptedProvider(std::filesystem::path dir);
  [[nodiscard]] std::string name() const override { return "scripted"; }
  std::string complete(const LlmRequest& req) override;

 private:
  std::filesystem::path dir_;
};

class CallbackProvider final : public Provider {
 public:
  explicit CallbackProvider(std::function<std::string(const LlmRequest&)> fn)
      : fn_(std::move(fn)) {}
  [[nodiscard]] std::string name() const override { return "callback"; }
  std::string complete(const LlmRequest& req) override { return fn_(req); }

 private:
  std::function<std::string(const LlmRequest&)> fn_;
};

/// "http" (configured from the environment) or "scripted:<dir>".
/// Throws Error{ConfigError}.
std::shared_ptr<Provider> make_provider(std::string_view spec);

}  // namespace fmutest::llm

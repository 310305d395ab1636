#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "fmutest/phase.hpp"

namespace fmutest::llm {

enum class LlmMode { Live, Record, Replay };

std::string_view to_string(LlmMode m) noexcept;
std::optional<LlmMode> parse_llm_mode(std::string_view text) noexcept;

struct LlmRequest {
  Phase phase = Phase::Constraints;
  std::string model_id;
  double temperature = 0.0;
  std::string prompt_text;
  std::string prompt_digest;

  /// Fills prompt_digest; throws Error{ConfigError} for temperatures outside [0, 1].
  static LlmRequest make(Phase phase, std::string model_id, double temperature,
                         std::string prompt_text);
};

struct LlmResponse {
  std::string raw_text;
  LlmMode mode = LlmMode::Replay;  // Live or Replay
  std::optional<std::int64_t> latency_ms;
};

/// Transport failures throw ProviderError with status 0, HTTP failures with
/// the response status.
class Provider {
 public:
  virtual ~Provider() = default;
  [[nodiscard]] virtual std::string name() const = 0;
  virtual std::string complete(const LlmRequest& req) = 0;
};

/// Defaults: goals 0.7, plans 0.2, constraints 0.2. `overrides` wins when set.
double phase_temperature(Phase phase, const std::map<Phase, double>* overrides = nullptr);

std::filesystem::path fixture_path(const std::filesystem::path& dir, Phase phase,
                                   const std::string& prompt_digest);

struct GatewayOptions {
  LlmMode mode = LlmMode::Replay;
  std::filesystem::path fixture_dir;
  std::optional<std::filesystem::path> journal_path;
  /// Max requests per phase; absent means unlimited.
  std::map<Phase, int> budget;
};

/// Issues requests serially. Every request is journaled before it is sent.
class LlmGateway {
 public:
  LlmGateway(GatewayOptions options, std::shared_ptr<Provider> provider);

  /// Errors: FixtureMiss (replay), ProviderError (after one retry on
  /// transport failure), BudgetExceeded.
  LlmResponse complete(const LlmRequest& req);

  [[nodiscard]] int requests(Phase phase) const;
  [[nodiscard]] const GatewayOptions& options() const noexcept { return options_; }

 private:
  std::string call_provider(const LlmRequest& req);

  GatewayOptions options_;
  std::shared_ptr<Provider> provider_;
  mutable std::mutex mutex_;
  std::map<Phase, int> counts_;
};

}  // namespace fmutest::llm

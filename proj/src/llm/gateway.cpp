#include "fmutest/llm/gateway.hpp"

#include <chrono>

#include <json.hpp>

#include "fmutest/digest.hpp"
#include "fmutest/error.hpp"
#include "fmutest/io.hpp"
#include "fmutest/scenario/canonical.hpp"

namespace fmutest::llm {

std::string_view to_string(LlmMode m) noexcept {
  switch (m) {
    case LlmMode::Live: return "live";
    case LlmMode::Record: return "record";
    case LlmMode::Replay: return "replay";
  }
  return "unknown";
}

std::optional<LlmMode> parse_llm_mode(std::string_view text) noexcept {
  if (text == "live") return LlmMode::Live;
  if (text == "record") return LlmMode::Record;
  if (text == "replay") return LlmMode::Replay;
  return std::nullopt;
}

LlmRequest LlmRequest::make(Phase phase, std::string model_id, double temperature,
                            std::string prompt_text) {
  if (!(temperature >= 0.0 && temperature <= 1.0)) {
    throw Error(Errc::ConfigError, "temperature must lie in [0, 1]");
  }
  LlmRequest r;
  r.phase = phase;
  r.model_id = std::move(model_id);
  r.temperature = temperature;
  r.prompt_digest = sha256_hex(prompt_text);
  r.prompt_text = std::move(prompt_text);
  return r;
}

double phase_temperature(Phase phase, const std::map<Phase, double>* overrides) {
  if (overrides != nullptr) {
    if (auto it = overrides->find(phase); it != overrides->end()) return it->second;
  }
  return phase == Phase::Goals ? 0.7 : 0.2;
}

std::filesystem::path fixture_path(const std::filesystem::path& dir, Phase phase,
                                   const std::string& prompt_digest) {
  return dir / (std::string(to_string(phase)) + "-" + prompt_digest + ".json");
}

LlmGateway::LlmGateway(GatewayOptions options, std::shared_ptr<Provider> provider)
    : options_(std::move(options)), provider_(std::move(provider)) {}

int LlmGateway::requests(Phase phase) const {
  std::lock_guard lock(mutex_);
  auto it = counts_.find(phase);
  return it == counts_.end() ? 0 : it->second;
}

std::string LlmGateway::call_provider(const LlmRequest& req) {
  if (!provider_) throw Error(Errc::ConfigError, "live mode requires an LLM provider");
  try {
    return provider_->complete(req);
  } catch (const ProviderError& e) {
    if (e.status() != 0) throw;
  }
  return provider_->complete(req);
}

LlmResponse LlmGateway::complete(const LlmRequest& req) {
  std::lock_guard lock(mutex_);
  int& count = counts_[req.phase];
  if (auto it = options_.budget.find(req.phase); it != options_.budget.end() && count >= it->second) {
    throw Error(Errc::BudgetExceeded, "request budget of " + std::to_string(it->second) +
                                          " for phase " + std::string(to_string(req.phase)) +
                                          " reached");
  }
  ++count;

  if (options_.journal_path) {
    const nlohmann::json entry = {{"ts", iso8601_now()},
                                  {"phase", std::string(to_string(req.phase))},
                                  {"prompt_digest", req.prompt_digest},
                                  {"model", req.model_id},
                                  {"temperature", req.temperature},
                                  {"mode", std::string(to_string(options_.mode))}};
    append_line(*options_.journal_path, scenario::canonical_dump(entry));
  }

  const auto path = fixture_path(options_.fixture_dir, req.phase, req.prompt_digest);
  if (options_.mode == LlmMode::Replay) {
    if (!std::filesystem::exists(path)) {
      throw Error(Errc::FixtureMiss, "no fixture for " + std::string(to_string(req.phase)) +
                                         " prompt " + req.prompt_digest);
    }
    nlohmann::json fixture;
    try {
      fixture = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::FixtureMiss, "unreadable fixture " + path.string() + ": " + e.what());
    }
    if (fixture.value("prompt_digest", std::string()) != req.prompt_digest) {
      throw Error(Errc::FixtureMiss, "fixture " + path.string() + " is keyed to another prompt");
    }
    return {fixture.value("raw_text", std::string()), LlmMode::Replay, std::nullopt};
  }

  const auto t0 = std::chrono::steady_clock::now();
  std::string text = call_provider(req);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  if (options_.mode == LlmMode::Record) {
    const nlohmann::json fixture = {{"prompt_digest", req.prompt_digest}, {"raw_text", text}};
    write_file_atomic(path, fixture.dump(2) + "\n");
  }
  return {std::move(text), LlmMode::Live, ms};
}

}  // namespace fmutest::llm

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fmutest {

enum class Errc {
  // model-interface
  MalformedXml,
  MissingVariables,
  DuplicateName,
  InvalidBounds,
  // llm-gateway
  MissingBinding,
  TemplateSyntax,
  FixtureMiss,
  ProviderError,
  BudgetExceeded,
  // scenario-core
  Rejection,
  UnknownItem,
  IllegalTransition,
  InvalidEdit,
  EmptyRun,
  // signal-lab
  InvalidConfig,
  OutOfWindow,
  // sim-runtime
  SimError,
  CapabilityMismatch,
  AdapterNotBundled,
  // oracle-engine
  EmptyWindow,
  NonConstantTarget,
  MissingOutput,
  // mutation-lab
  DegenerateBounds,
  LengthMismatch,
  NoPassingScenarios,
  // pipeline-service
  StageGateViolation,
  ConfigError,
  IoError,
};

std::string_view errc_name(Errc code) noexcept;

/// Library-wide exception. Every failure mode named by a module carries its
/// own Errc so callers (CLI, HTTP layer) can map it without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Validation failure that could not be repaired; carries every reason found.
class Rejection : public Error {
 public:
  explicit Rejection(std::vector<std::string> reasons)
      : Error(Errc::Rejection, join(reasons)), reasons_(std::move(reasons)) {}

  [[nodiscard]] const std::vector<std::string>& reasons() const noexcept {
    return reasons_;
  }

 private:
  static std::string join(const std::vector<std::string>& reasons);
  std::vector<std::string> reasons_;
};

/// Provider/transport failure; status is the HTTP status or 0 for transport.
class ProviderError : public Error {
 public:
  ProviderError(int status, const std::string& message)
      : Error(Errc::ProviderError, message), status_(status) {}

  [[nodiscard]] int status() const noexcept { return status_; }

 private:
  int status_;
};

}  // namespace fmutest

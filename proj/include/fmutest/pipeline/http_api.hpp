#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "fmutest/error.hpp"
#include "fmutest/pipeline/pipeline.hpp"
#include "fmutest/pipeline/run_config.hpp"

namespace httplib {
class Server;
}

namespace fmutest::pipeline {

/// HTTP status for a library error code.
int http_status(Errc code) noexcept;

/// JSON API over a Pipeline:
///   POST /runs, GET /runs, GET /runs/{id}, POST /runs/{id}/advance/{stage},
///   GET /runs/{id}/goals, POST /runs/{id}/goals/{gid}/review, (plans alike),
///   GET /runs/{id}/results, GET /runs/{id}/plots/{test_id},
///   GET /runs/{id}/mutation, GET /health.
/// Errors are {"error": <code name>, "detail": <message>}.
class HttpApi {
 public:
  HttpApi(Pipeline& pipeline, RunConfig defaults,
          std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~HttpApi();
  HttpApi(const HttpApi&) = delete;
  HttpApi& operator=(const HttpApi&) = delete;

  /// Blocks until stop().
  bool listen(const std::string& host, int port);
  /// Returns the bound port or -1.
  int bind_any_port(const std::string& host);
  /// Serves on a socket bound by bind_any_port; blocks until stop().
  bool listen_after_bind();
  void stop();

  [[nodiscard]] httplib::Server& server() noexcept { return *server_; }

 private:
  void install_routes();

  Pipeline& pipeline_;
  RunConfig defaults_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace fmutest::pipeline

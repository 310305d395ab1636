#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <string>

#include <unistd.h>

#include "fmutest/pipeline/run_config.hpp"

#ifndef FMUTEST_DATA_DIR
#error "FMUTEST_DATA_DIR must point at the bundled data directory"
#endif

namespace fmutest_test {

inline std::filesystem::path data_dir() { return FMUTEST_DATA_DIR; }
inline std::filesystem::path loc_dir() { return data_dir() / "loc"; }

/// Unique scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    path_ = std::filesystem::temp_directory_path() /
            ("fmutest-" + std::to_string(::getpid()) + "-" + std::to_string(stamp) + "-" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

/// Bundled LOC configuration in replay mode.
inline fmutest::pipeline::RunConfig loc_config() {
  return fmutest::pipeline::load_run_config(loc_dir() / "run-config.json");
}

}  // namespace fmutest_test

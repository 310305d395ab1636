#pragma once

#include <ostream>

#include "fmutest/error.hpp"

namespace fmutest::pipeline {

/// 1 for validation and gating outcomes, 2 for environment/config errors.
int exit_code_for(Errc code) noexcept;

/// Entry point of the `fmutest` tool. Returns the process exit code.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace fmutest::pipeline

#pragma once

#include <cstddef>

namespace fmutest::scenario {

/// valid / (valid + invalid), rounded to 2 decimals. Throws Error{EmptyRun}.
double run_accuracy(std::size_t valid, std::size_t invalid);

}  // namespace fmutest::scenario

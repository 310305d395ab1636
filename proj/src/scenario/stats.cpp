#include "fmutest/scenario/stats.hpp"

#include "fmutest/error.hpp"
#include "fmutest/format.hpp"

namespace fmutest::scenario {

double run_accuracy(std::size_t valid, std::size_t invalid) {
  const std::size_t total = valid + invalid;
  if (total == 0) throw Error(Errc::EmptyRun, "accuracy of an empty run is undefined");
  return round_decimals(static_cast<double>(valid) / static_cast<double>(total), 2);
}

}  // namespace fmutest::scenario

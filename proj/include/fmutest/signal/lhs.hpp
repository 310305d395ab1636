#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace fmutest::signal {

using Range = std::pair<double, double>;

/// Lower edge of stratum k of n over [lo, hi]; stratum k is [edge(k), edge(k+1)),
/// the last one closed.
double stratum_edge(const Range& r, std::size_t k, std::size_t n) noexcept;

/// Latin Hypercube sample: n points of ranges.size() coordinates.
/// Per dimension (in order) the strata are shuffled and one uniform draw is
/// placed inside each. A zero-width range yields lo exactly.
std::vector<std::vector<double>> lhs_sample(const std::vector<Range>& ranges, std::size_t n,
                                            std::uint64_t seed);

}  // namespace fmutest::signal

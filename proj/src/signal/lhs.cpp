#include "fmutest/signal/lhs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fmutest/signal/pcg32.hpp"

namespace fmutest::signal {

double stratum_edge(const Range& r, std::size_t k, std::size_t n) noexcept {
  if (k >= n) return r.second;
  return r.first + (r.second - r.first) * (static_cast<double>(k) / static_cast<double>(n));
}

std::vector<std::vector<double>> lhs_sample(const std::vector<Range>& ranges, std::size_t n,
                                            std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("lhs_sample: n must be at least 1");
  for (const auto& r : ranges) {
    if (!(r.first <= r.second)) throw std::invalid_argument("lhs_sample: lo > hi");
  }

  Pcg32 rng(seed);
  std::vector<std::vector<double>> points(n, std::vector<double>(ranges.size()));
  std::vector<std::size_t> strata(n);

  for (std::size_t d = 0; d < ranges.size(); ++d) {
    const Range& r = ranges[d];
    std::iota(strata.begin(), strata.end(), std::size_t{0});
    rng.shuffle(strata);
    for (std::size_t i = 0; i < n; ++i) {
      const double u = rng.uniform01();
      if (r.first == r.second) {
        points[i][d] = r.first;
        continue;
      }
      const std::size_t k = strata[i];
      const double a = stratum_edge(r, k, n);
      const double b = stratum_edge(r, k + 1, n);
      double x = a + (b - a) * u;
      if (x < a) x = a;
      if (k + 1 < n) {
        if (x >= b) x = std::nextafter(b, a);
      } else if (x > b) {
        x = b;
      }
      points[i][d] = x;
    }
  }
  return points;
}

}  // namespace fmutest::signal

#include "fmutest/format.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fmutest {

std::string format_real(double value) {
  if (!std::isfinite(value)) throw std::domain_error("non-finite real in canonical form");
  if (value == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

double truncate_decimals(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  // The nudge absorbs representation error such as 0.29 * 100 = 28.999999999999996.
  return std::floor(value * scale + 1e-9) / scale;
}

double round_decimals(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(value * scale) / scale;
}

}  // namespace fmutest

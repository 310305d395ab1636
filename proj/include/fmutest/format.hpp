#pragma once

#include <string>

namespace fmutest {

/// Canonical real rendering: 9 significant digits, trailing zeros trimmed,
/// negative zero folded to "0". Throws std::domain_error on NaN/inf.
std::string format_real(double value);

/// Truncates (never rounds up) to the given number of decimals.
double truncate_decimals(double value, int decimals);

/// Rounds half away from zero to the given number of decimals.
double round_decimals(double value, int decimals);

}  // namespace fmutest

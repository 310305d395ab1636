#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fmutest/scenario/types.hpp"
#include "fmutest/signal/synthesize.hpp"

namespace fmutest::oracle {

struct AssertionVerdict {
  scenario::AssertionSpec assertion;
  bool passed = false;
  std::string detail;
  std::pair<double, double> window_used{0.0, 0.0};
  /// Resolved settles_to target (literal or the target_var level).
  std::optional<double> target;
  /// Monotonic pass with zero net change over the window.
  bool ambiguous = false;
};

/// Index of the sample nearest to t, ties toward the earlier sample, clipped
/// to the series. `times` must be non-empty and increasing.
std::size_t snap_index(const std::vector<double>& times, double t);

// Evaluators over a recorded output series. Assertion times are seconds,
// snapped to the series grid; absent from/to default to the full series.
// bounded and monotonic throw Error{EmptyWindow} for inverted windows (and
// monotonic for windows with fewer than 2 samples).
AssertionVerdict eval_bounded(const signal::TimeSeries& y, const scenario::BoundedAssertion& a);
AssertionVerdict eval_crossing(const signal::TimeSeries& y, const scenario::CrossingAssertion& a);
AssertionVerdict eval_monotonic(const signal::TimeSeries& y,
                                const scenario::MonotonicAssertion& a);
AssertionVerdict eval_settles_to(const signal::TimeSeries& y,
                                 const scenario::SettlesToAssertion& a, double target);

/// Level of a target_var series; throws Error{NonConstantTarget} if it varies.
double constant_level(const signal::TimeSeries& target_series);

}  // namespace fmutest::oracle

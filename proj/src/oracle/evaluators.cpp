#include "fmutest/oracle/evaluators.hpp"

#include <algorithm>
#include <cmath>

#include "fmutest/error.hpp"
#include "fmutest/format.hpp"

namespace fmutest::oracle {

using scenario::BoundedAssertion;
using scenario::CrossingAssertion;
using scenario::MonotonicAssertion;
using scenario::SettlesToAssertion;

namespace {

std::string at(double t, double v) { return "t=" + format_real(t) + " value=" + format_real(v); }

void require_samples(const signal::TimeSeries& y) {
  if (y.values.empty() || y.values.size() != y.times.size()) {
    throw Error(Errc::EmptyWindow, "series '" + y.var + "' has no samples");
  }
}

struct Window {
  std::size_t a;
  std::size_t b;
};

Window window_of(const signal::TimeSeries& y, const std::optional<double>& from,
                 const std::optional<double>& to) {
  const std::size_t a = from ? snap_index(y.times, *from) : 0;
  const std::size_t b = to ? snap_index(y.times, *to) : y.times.size() - 1;
  if (a > b) {
    throw Error(Errc::EmptyWindow, "window [" + format_real(y.times[a]) + ", " +
                                       format_real(y.times[b]) + "] is empty");
  }
  return {a, b};
}

}  // namespace

std::size_t snap_index(const std::vector<double>& times, double t) {
  auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return 0;
  if (it == times.end()) return times.size() - 1;
  const auto hi = static_cast<std::size_t>(it - times.begin());
  const std::size_t lo = hi - 1;
  return (times[hi] - t) < (t - times[lo]) ? hi : lo;
}

AssertionVerdict eval_bounded(const signal::TimeSeries& y, const BoundedAssertion& a) {
  require_samples(y);
  const Window w = window_of(y, a.from_timestep, a.to_timestep);
  AssertionVerdict v{a, true, {}, {y.times[w.a], y.times[w.b]}, std::nullopt, false};
  for (std::size_t k = w.a; k <= w.b; ++k) {
    if (!(y.values[k] >= a.low && y.values[k] <= a.high)) {
      v.passed = false;
      v.detail = at(y.times[k], y.values[k]) + " outside [" + format_real(a.low) + ", " +
                 format_real(a.high) + "]";
      return v;
    }
  }
  v.detail = "within [" + format_real(a.low) + ", " + format_real(a.high) + "]";
  return v;
}

AssertionVerdict eval_crossing(const signal::TimeSeries& y, const CrossingAssertion& a) {
  require_samples(y);
  const std::size_t kb = snap_index(y.times, a.by_time);
  AssertionVerdict v{a, false, {}, {y.times.front(), y.times[kb]}, std::nullopt, false};
  const char* side = a.above ? "above" : "below";
  for (std::size_t k = 0; k <= kb; ++k) {
    const bool crossed = a.above ? y.values[k] > a.threshold : y.values[k] < a.threshold;
    if (crossed) {
      v.passed = true;
      v.detail = std::string("crossed ") + side + " " + format_real(a.threshold) + " at " +
                 at(y.times[k], y.values[k]);
      return v;
    }
  }
  v.detail = std::string("never ") + side + " " + format_real(a.threshold) + " by t=" +
             format_real(y.times[kb]);
  return v;
}

AssertionVerdict eval_monotonic(const signal::TimeSeries& y, const MonotonicAssertion& a) {
  require_samples(y);
  const Window w = window_of(y, a.from_timestep, a.to_timestep);
  if (w.b - w.a < 1) {
    throw Error(Errc::EmptyWindow, "monotonic window on '" + y.var + "' holds fewer than 2 samples");
  }
  const double eps = a.eps.value_or(0.0);
  AssertionVerdict v{a, true, {}, {y.times[w.a], y.times[w.b]}, std::nullopt, false};
  for (std::size_t k = w.a; k < w.b; ++k) {
    const double prev = y.values[k];
    const double next = y.values[k + 1];
    const bool ok = a.increasing ? next >= prev - eps : next <= prev + eps;
    if (!ok) {
      v.passed = false;
      v.detail = at(y.times[k + 1], next) + " after " + format_real(prev) + " (change " +
                 format_real(next - prev) + ", eps " + format_real(eps) + ")";
      return v;
    }
  }
  if (y.values[w.b] == y.values[w.a]) {
    v.ambiguous = true;
    v.detail = "passes with zero net change over the window";
  } else {
    v.detail = std::string(a.increasing ? "non-decreasing" : "non-increasing") +
               " within eps " + format_real(eps);
  }
  return v;
}

AssertionVerdict eval_settles_to(const signal::TimeSeries& y, const SettlesToAssertion& a,
                                 double target) {
  require_samples(y);
  const std::size_t n = y.values.size();
  const std::size_t kw = snap_index(y.times, a.within);
  AssertionVerdict v{a, false, {}, {y.times.front(), y.times.back()}, target, false};
  auto inside = [&](std::size_t k) { return std::fabs(y.values[k] - target) <= a.tol; };

  // Earliest t_s such that every later sample stays in the band.
  std::size_t ts = n;
  for (std::size_t k = n; k-- > 0;) {
    if (!inside(k)) break;
    ts = k;
  }
  if (ts <= kw) {
    v.passed = true;
    v.detail = "settled at t=" + format_real(y.times[ts]);
    return v;
  }

  std::size_t entry = n;
  for (std::size_t k = 0; k <= kw; ++k) {
    if (inside(k)) {
      entry = k;
      break;
    }
  }
  if (entry < n) {
    for (std::size_t k = entry + 1; k < n; ++k) {
      if (!inside(k)) {
        v.detail = "band exit at t=" + format_real(y.times[k]);
        return v;
      }
    }
  }
  if (ts < n) {
    v.detail = "settled at t=" + format_real(y.times[ts]) + ", after within t=" +
               format_real(y.times[kw]);
  } else {
    v.detail = "outside " + format_real(target) + " +/- " + format_real(a.tol) + " at t=" +
               format_real(y.times.back());
  }
  return v;
}

double constant_level(const signal::TimeSeries& target_series) {
  if (target_series.values.empty()) {
    throw Error(Errc::NonConstantTarget, "target series '" + target_series.var + "' is empty");
  }
  const double level = target_series.values.front();
  for (double x : target_series.values) {
    if (x != level) {
      throw Error(Errc::NonConstantTarget,
                  "target series '" + target_series.var + "' is not constant");
    }
  }
  return level;
}

}  // namespace fmutest::oracle
